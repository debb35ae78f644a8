from __future__ import annotations
from enum import StrEnum


class ComponentKind(StrEnum):
    Activity = "Activity"
    Service = "Service"
    Receiver = "Receiver"
    Provider = "Provider"

    @classmethod
    def from_tag(cls, tag: str) -> "ComponentKind | None":
        return _TAGS.get(tag)


_TAGS = {
    "activity": ComponentKind.Activity,
    "activity-alias": ComponentKind.Activity,
    "service": ComponentKind.Service,
    "receiver": ComponentKind.Receiver,
    "provider": ComponentKind.Provider,
}

from __future__ import annotations
from enum import StrEnum


class Channel(StrEnum):
    """Sink channels."""

    Bundle = "Bundle"
    Intent = "Intent"
    Log = "Log"
    SMS = "SMS"
    SharedPreferences = "SharedPreferences"
    File = "File"
    Broadcast = "Broadcast"

    @classmethod
    def parse(cls, label: str) -> "Channel":
        for member in cls:
            if member.value.lower() == label.strip().lower():
                return member
        raise ValueError(f"unknown sink channel: {label!r}")


class SourceKind(StrEnum):
    Location = "Location"
    DeviceId = "DeviceId"
    Contacts = "Contacts"
    Account = "Account"
    Database = "Database"
    UserInput = "UserInput"
    PiiField = "PiiField"

    @classmethod
    def parse(cls, label: str) -> "SourceKind":
        for member in cls:
            if member.value.lower() == label.strip().lower():
                return member
        raise ValueError(f"unknown source kind: {label!r}")

    @property
    def intrinsic_pii(self) -> bool:
        return self in _INTRINSIC


_INTRINSIC = frozenset(
    {SourceKind.Location, SourceKind.DeviceId, SourceKind.Contacts, SourceKind.Account}
)

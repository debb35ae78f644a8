from __future__ import annotations
from enum import StrEnum


class InvokeKind(StrEnum):
    virtual = "virtual"
    super = "super"
    direct = "direct"
    static = "static"
    interface = "interface"

    @property
    def dispatches(self) -> bool:
        """Receiver type decides the target at run time."""
        return self in (InvokeKind.virtual, InvokeKind.interface)

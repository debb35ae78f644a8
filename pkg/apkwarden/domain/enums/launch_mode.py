from __future__ import annotations
from enum import StrEnum


class LaunchMode(StrEnum):
    standard = "standard"
    singleTop = "singleTop"
    singleTask = "singleTask"
    singleInstance = "singleInstance"

    @classmethod
    def from_attr(cls, value: object) -> "LaunchMode":
        """Compiled manifests store the enum ordinal; plaintext ones the name."""
        if isinstance(value, bool) or value is None:
            return cls.standard
        if isinstance(value, int):
            return _ORDINALS.get(value, cls.standard)
        try:
            return cls(str(value))
        except ValueError:
            return cls.standard


# 4 is singleInstancePerTask, which behaves like singleTask for task affinity.
_ORDINALS = {
    0: LaunchMode.standard,
    1: LaunchMode.singleTop,
    2: LaunchMode.singleTask,
    3: LaunchMode.singleInstance,
    4: LaunchMode.singleTask,
}

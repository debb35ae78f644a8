from __future__ import annotations
from enum import StrEnum


class Severity(StrEnum):
    Info = "Info"
    Warning = "Warning"
    High = "High"

    @property
    def rank(self) -> int:
        return {"Info": 0, "Warning": 1, "High": 2}[self.value]

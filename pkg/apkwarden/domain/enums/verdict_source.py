from __future__ import annotations
from enum import StrEnum


class VerdictSource(StrEnum):
    Remote = "Remote"
    Cache = "Cache"
    Stub = "Stub"

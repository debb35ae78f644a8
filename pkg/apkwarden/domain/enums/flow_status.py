from __future__ import annotations
from enum import StrEnum


class FlowStatus(StrEnum):
    Candidate = "Candidate"
    Confirmed = "Confirmed"

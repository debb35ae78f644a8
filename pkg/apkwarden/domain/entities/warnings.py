from __future__ import annotations

from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True, order=True)
class ScanWarning:
    """Non-fatal condition surfaced in the report (code is a stable kebab-case id)."""

    code: str
    message: str
    location: Optional[str] = None

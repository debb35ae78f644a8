# apkwarden/domain/policies/exit_status.py
from __future__ import annotations

from typing import Iterable, Optional

from apkwarden.domain.enums.severity import Severity

EXIT_OK = 0
EXIT_WARNING = 1
EXIT_HIGH = 2
EXIT_TOOL_ERROR = 3


def highest_severity(severities: Iterable[Severity]) -> Optional[Severity]:
    best: Optional[Severity] = None
    for s in severities:
        if best is None or s.rank > best.rank:
            best = s
    return best


def exit_code_for(severities: Iterable[Severity]) -> int:
    """0 = nothing above Info, 1 = Warning, 2 = High. Info never fails a CI run."""
    best = highest_severity(severities)
    if best is Severity.High:
        return EXIT_HIGH
    if best is Severity.Warning:
        return EXIT_WARNING
    return EXIT_OK

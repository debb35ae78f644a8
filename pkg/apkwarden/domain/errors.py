# apkwarden/domain/errors.py
from __future__ import annotations

from typing import Any, Dict, Optional


class ScanError(Exception):
    """
    Fatal analysis error. Carries enough context for a machine-readable error report:
    the archive entry being parsed and the byte offset inside it, when known.
    """

    def __init__(self, message: str, *, entry: Optional[str] = None, offset: Optional[int] = None):
        super().__init__(message)
        self.message = message
        self.entry = entry
        self.offset = offset

    @property
    def kind(self) -> str:
        return type(self).__name__

    def located(self, entry: str) -> "ScanError":
        """Attach the archive entry name if the raiser did not know it."""
        if self.entry is None:
            self.entry = entry
        return self

    def as_dict(self) -> Dict[str, Any]:
        return {
            "type": self.kind,
            "message": self.message,
            "entry": self.entry,
            "offset": self.offset,
        }

    def __str__(self) -> str:
        where = []
        if self.entry is not None:
            where.append(self.entry)
        if self.offset is not None:
            where.append(f"@0x{self.offset:x}")
        return f"{self.message} ({' '.join(where)})" if where else self.message


class DataFileError(ScanError):
    """A bundled or user-supplied data file (rules, sources/sinks, trackers, ...) is invalid."""


class NoApksFound(ScanError):
    pass

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Optional, Tuple

from apkwarden.domain.enums.verdict_source import VerdictSource

EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)


@dataclass(frozen=True)
class TrackerSignature:
    name: str
    package_prefixes: Tuple[str, ...]
    website: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("tracker name must be non-empty")
        if not self.package_prefixes:
            raise ValueError(f"{self.name}: at least one prefix is required")
        for p in self.package_prefixes:
            if not p.startswith("L"):
                raise ValueError(f"{self.name}: prefix {p!r} is not a class descriptor prefix")

    def matches(self, descriptor: str) -> bool:
        return descriptor.startswith(self.package_prefixes)


@dataclass(frozen=True)
class TrackerMatch:
    signature: TrackerSignature
    class_count: int


@dataclass(frozen=True)
class MalwareVerdict:
    sha256: str
    engines_total: int = 0
    engines_flagged: int = 0
    labels: Tuple[str, ...] = ()
    fetched_at: datetime = EPOCH
    source: VerdictSource = VerdictSource.Stub
    error: Optional[str] = None

    def __post_init__(self) -> None:
        if self.engines_flagged > self.engines_total:
            raise ValueError("engines_flagged cannot exceed engines_total")
        if self.source == VerdictSource.Stub and self.engines_total != 0:
            raise ValueError("stub verdicts carry engines_total = 0")

    @classmethod
    def stub(cls, sha256: str, *, error: Optional[str] = None, fetched_at: datetime = EPOCH):
        return cls(sha256=sha256, fetched_at=fetched_at, source=VerdictSource.Stub, error=error)

    @property
    def flagged(self) -> bool:
        return self.engines_flagged > 0

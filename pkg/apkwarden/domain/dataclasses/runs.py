# apkwarden/domain/dataclasses/runs.py
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional


# ---------------------------------------------------------------------------
# Base run (shared fields + utilities)
# ---------------------------------------------------------------------------
@dataclass
class BaseRun:
    """Common run base:
    - timing: started_at / finished_at (UTC)
    - error capture: error_details
    - helpers: start(), stop(), add_error(), as_dict()
    """
    started_at: Optional[datetime] = None
    finished_at: Optional[datetime] = None
    error_details: List[str] = field(default_factory=list)

    def start(self) -> None:
        if self.started_at is None:
            self.started_at = datetime.now(timezone.utc)

    def stop(self) -> None:
        self.finished_at = datetime.now(timezone.utc)

    def add_error(self, message: str) -> None:
        self.error_details.append(message)

    @property
    def duration_sec(self) -> float:
        if self.started_at is None or self.finished_at is None:
            return 0.0
        return (self.finished_at - self.started_at).total_seconds()

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)


# ---------------------------------------------------------------------------
# Single APK scan
# ---------------------------------------------------------------------------
@dataclass
class ScanRun(BaseRun):
    # per-stage wall time, seconds
    stages: Dict[str, float] = field(default_factory=dict)

    def record(self, stage: str, seconds: float) -> None:
        self.stages[stage] = self.stages.get(stage, 0.0) + seconds


# ---------------------------------------------------------------------------
# Corpus scan
# ---------------------------------------------------------------------------
@dataclass
class CorpusRun(BaseRun):
    planned: int = 0
    scanned: int = 0
    failed: int = 0


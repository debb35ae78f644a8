# apkwarden/domain/entities/report.py
from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime
from typing import List, Tuple

from apkwarden.domain.entities.rules import Finding
from apkwarden.domain.entities.taint import FlowPath
from apkwarden.domain.entities.trackers import EPOCH, MalwareVerdict, TrackerMatch
from apkwarden.domain.entities.warnings import ScanWarning
from apkwarden.domain.enums.severity import Severity


@dataclass(frozen=True)
class ApkInfo:
    path: str
    sha256: str
    package: str


@dataclass(frozen=True)
class ReportMeta:
    tool_version: str
    rule_count: int
    source_sink_count: int
    keyword_count: int
    tracker_count: int
    duration_sec: float = 0.0
    scanned_at: datetime = EPOCH


@dataclass(frozen=True)
class ScanReport:
    """Everything one APK scan produced, in canonical order."""

    apk: ApkInfo
    findings: Tuple[Finding, ...]
    flows: Tuple[FlowPath, ...]
    trackers: Tuple[TrackerMatch, ...]
    malware: MalwareVerdict
    warnings: Tuple[ScanWarning, ...] = ()
    meta: ReportMeta = field(default_factory=lambda: ReportMeta("", 0, 0, 0, 0))

    def severities(self) -> List[Severity]:
        """Confirmed flows and a flagged malware verdict rank as High; trackers never count."""
        out = [f.severity for f in self.findings]
        out.extend(Severity.High for _ in self.flows)
        if self.malware.flagged:
            out.append(Severity.High)
        return out

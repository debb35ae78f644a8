# apkwarden/services/schemas/report.py
from __future__ import annotations

from datetime import datetime
from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from apkwarden.domain.entities.trackers import EPOCH
from apkwarden.domain.enums.flow_status import FlowStatus
from apkwarden.domain.enums.rule_category import AssessmentCategory, RuleCategory
from apkwarden.domain.enums.severity import Severity
from apkwarden.domain.enums.verdict_source import VerdictSource

SCHEMA_VERSION = 1


class ApkInfoSchema(BaseModel):
    path: str
    sha256: str
    package: str


class LocationSchema(BaseModel):
    entry: str
    class_descriptor: Optional[str] = None
    method: Optional[str] = None
    offset: Optional[int] = None
    manifest_path: Optional[str] = None


class FindingSchema(BaseModel):
    rule_id: str
    category: RuleCategory
    severity: Severity
    evidence: str
    location: LocationSchema
    pii_tag: Optional[str] = None
    confirmed_called: bool = False


class MethodSchema(BaseModel):
    entry: Optional[str] = Field(None, description="Defining DEX entry; null outside the app")
    class_descriptor: str
    name: str
    proto: str


class FlowEndpointSchema(BaseModel):
    method: MethodSchema
    site: int
    pattern: str
    label: str


class CallEdgeSchema(BaseModel):
    caller: MethodSchema
    callee: MethodSchema
    site: int


class FlowSchema(BaseModel):
    source: FlowEndpointSchema
    sink: FlowEndpointSchema
    channel: str
    call_chain: List[CallEdgeSchema] = Field(default_factory=list)
    pii_tag: Optional[str] = None
    status: FlowStatus = FlowStatus.Confirmed


class TrackerSchema(BaseModel):
    name: str
    website: Optional[str] = None
    class_count: int = Field(..., ge=1)


class MalwareVerdictSchema(BaseModel):
    sha256: str
    engines_total: int = Field(0, ge=0)
    engines_flagged: int = Field(0, ge=0)
    labels: List[str] = Field(default_factory=list)
    fetched_at: datetime = EPOCH
    source: VerdictSource = VerdictSource.Stub
    error: Optional[str] = None


class WarningSchema(BaseModel):
    code: str
    message: str
    location: Optional[str] = None


class MetaSchema(BaseModel):
    tool_version: str
    rule_count: int
    source_sink_count: int
    keyword_count: int
    tracker_count: int
    duration_sec: float = 0.0
    scanned_at: datetime = EPOCH


class SummarySchema(BaseModel):
    counts: Dict[AssessmentCategory, int] = Field(default_factory=dict)
    highest_severity: Optional[Severity] = None
    exit_code: int = 0


class ScanReportSchema(BaseModel):
    schema_version: int = SCHEMA_VERSION
    apk: ApkInfoSchema
    findings: List[FindingSchema] = Field(default_factory=list)
    flows: List[FlowSchema] = Field(default_factory=list)
    trackers: List[TrackerSchema] = Field(default_factory=list)
    malware: MalwareVerdictSchema
    warnings: List[WarningSchema] = Field(default_factory=list)
    meta: MetaSchema
    summary: SummarySchema = Field(default_factory=SummarySchema)


class ErrorDetailSchema(BaseModel):
    type: str
    message: str
    entry: Optional[str] = None
    offset: Optional[int] = None


class ErrorReportSchema(BaseModel):
    """Written instead of a scan report when the APK cannot be analysed."""

    schema_version: int = SCHEMA_VERSION
    apk_path: str
    error: ErrorDetailSchema


class MatrixCellSchema(BaseModel):
    source: str
    sink: str
    count: int = Field(..., ge=1)


class CorpusFailureSchema(BaseModel):
    path: str
    error: ErrorDetailSchema


class CorpusStatsSchema(BaseModel):
    schema_version: int = SCHEMA_VERSION
    n_apps: int = Field(0, ge=0, description="Apps scanned successfully")
    per_rule_prevalence: Dict[str, float] = Field(default_factory=dict)
    per_tracker_prevalence: Dict[str, float] = Field(default_factory=dict)
    per_category_prevalence: Dict[AssessmentCategory, float] = Field(default_factory=dict)
    source_sink_matrix: List[MatrixCellSchema] = Field(default_factory=list)
    reports: List[str] = Field(default_factory=list, description="Per-app report file names")
    failures: List[CorpusFailureSchema] = Field(default_factory=list)

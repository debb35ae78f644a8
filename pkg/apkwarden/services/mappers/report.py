# apkwarden/services/mappers/report.py
from __future__ import annotations

from dataclasses import replace
from typing import Dict

from apkwarden.domain.entities.dex import MethodId
from apkwarden.domain.entities.report import ScanReport
from apkwarden.domain.entities.rules import Finding, Location
from apkwarden.domain.entities.taint import CallEdge, FlowEndpoint, FlowPath
from apkwarden.domain.entities.trackers import EPOCH, MalwareVerdict, TrackerMatch
from apkwarden.domain.entities.warnings import ScanWarning
from apkwarden.domain.enums.rule_category import AssessmentCategory, RuleCategory
from apkwarden.domain.errors import ScanError
from apkwarden.domain.policies.exit_status import exit_code_for, highest_severity
from apkwarden.services.schemas.report import (
    ApkInfoSchema,
    CallEdgeSchema,
    ErrorDetailSchema,
    ErrorReportSchema,
    FindingSchema,
    FlowEndpointSchema,
    FlowSchema,
    LocationSchema,
    MalwareVerdictSchema,
    MetaSchema,
    MethodSchema,
    ScanReportSchema,
    SummarySchema,
    TrackerSchema,
    WarningSchema,
)


def to_method_schema(mid: MethodId) -> MethodSchema:
    return MethodSchema(
        entry=mid.provenance, class_descriptor=mid.class_descriptor, name=mid.name, proto=mid.proto
    )


def from_method_schema(m: MethodSchema) -> MethodId:
    return MethodId(m.entry, m.class_descriptor, m.name, m.proto)


def to_location_schema(loc: Location) -> LocationSchema:
    return LocationSchema(
        entry=loc.entry,
        class_descriptor=loc.class_descriptor,
        method=loc.method,
        offset=loc.offset,
        manifest_path=loc.manifest_path,
    )


def to_finding_schema(f: Finding) -> FindingSchema:
    return FindingSchema(
        rule_id=f.rule_id,
        category=f.category,
        severity=f.severity,
        evidence=f.evidence,
        location=to_location_schema(f.location),
        pii_tag=f.pii_tag,
        confirmed_called=f.confirmed_called,
    )


def _endpoint(e: FlowEndpoint) -> FlowEndpointSchema:
    return FlowEndpointSchema(
        method=to_method_schema(e.method), site=e.site, pattern=e.pattern, label=e.label
    )


def _edge(e: CallEdge) -> CallEdgeSchema:
    return CallEdgeSchema(
        caller=to_method_schema(e.caller), callee=to_method_schema(e.callee), site=e.site
    )


def to_flow_schema(p: FlowPath) -> FlowSchema:
    return FlowSchema(
        source=_endpoint(p.source),
        sink=_endpoint(p.sink),
        channel=p.channel,
        call_chain=[_edge(e) for e in p.call_chain],
        pii_tag=p.pii_tag,
        status=p.status,
    )


def from_flow_schema(s: FlowSchema) -> FlowPath:
    def endpoint(e: FlowEndpointSchema) -> FlowEndpoint:
        return FlowEndpoint(from_method_schema(e.method), e.site, e.pattern, e.label)

    return FlowPath(
        source=endpoint(s.source),
        sink=endpoint(s.sink),
        call_chain=tuple(
            CallEdge(from_method_schema(e.caller), from_method_schema(e.callee), e.site)
            for e in s.call_chain
        ),
        pii_tag=s.pii_tag,
        status=s.status,
    )


def to_tracker_schema(m: TrackerMatch) -> TrackerSchema:
    return TrackerSchema(
        name=m.signature.name, website=m.signature.website, class_count=m.class_count
    )


def to_verdict_schema(v: MalwareVerdict) -> MalwareVerdictSchema:
    return MalwareVerdictSchema(
        sha256=v.sha256,
        engines_total=v.engines_total,
        engines_flagged=v.engines_flagged,
        labels=list(v.labels),
        fetched_at=v.fetched_at,
        source=v.source,
        error=v.error,
    )


def from_verdict_schema(s: MalwareVerdictSchema) -> MalwareVerdict:
    return MalwareVerdict(
        sha256=s.sha256,
        engines_total=s.engines_total,
        engines_flagged=s.engines_flagged,
        labels=tuple(s.labels),
        fetched_at=s.fetched_at,
        source=s.source,
        error=s.error,
    )


def to_warning_schema(w: ScanWarning) -> WarningSchema:
    return WarningSchema(code=w.code, message=w.message, location=w.location)


def category_counts(report: ScanReport) -> Dict[AssessmentCategory, int]:
    manifest = sum(1 for f in report.findings if f.category == RuleCategory.ManifestWeakness)
    return {
        AssessmentCategory.manifest_weaknesses: manifest,
        AssessmentCategory.security_vulnerabilities: len(report.findings) - manifest,
        AssessmentCategory.privacy_leaks: len(report.flows),
        AssessmentCategory.malware: 1 if report.malware.flagged else 0,
    }


def to_summary_schema(report: ScanReport) -> SummarySchema:
    severities = report.severities()
    return SummarySchema(
        counts=category_counts(report),
        highest_severity=highest_severity(severities),
        exit_code=exit_code_for(severities),
    )


def to_report_schema(report: ScanReport, *, deterministic: bool = False) -> ScanReportSchema:
    """
    Serializable report. ``deterministic`` zeroes every timestamp and the duration so two
    runs over the same inputs produce identical bytes.
    """
    meta = report.meta
    verdict = report.malware
    if deterministic:
        meta = replace(meta, duration_sec=0.0, scanned_at=EPOCH)
        verdict = replace(verdict, fetched_at=EPOCH)
    return ScanReportSchema(
        apk=ApkInfoSchema(
            path=report.apk.path, sha256=report.apk.sha256, package=report.apk.package
        ),
        findings=[to_finding_schema(f) for f in report.findings],
        flows=[to_flow_schema(p) for p in report.flows],
        trackers=[to_tracker_schema(t) for t in report.trackers],
        malware=to_verdict_schema(verdict),
        warnings=[to_warning_schema(w) for w in report.warnings],
        meta=MetaSchema(
            tool_version=meta.tool_version,
            rule_count=meta.rule_count,
            source_sink_count=meta.source_sink_count,
            keyword_count=meta.keyword_count,
            tracker_count=meta.tracker_count,
            duration_sec=meta.duration_sec,
            scanned_at=meta.scanned_at,
        ),
        summary=to_summary_schema(report),
    )


def to_error_detail(err: ScanError | Exception) -> ErrorDetailSchema:
    if isinstance(err, ScanError):
        return ErrorDetailSchema(**err.as_dict())
    return ErrorDetailSchema(type=type(err).__name__, message=str(err))


def to_error_report(path: str, err: ScanError | Exception) -> ErrorReportSchema:
    return ErrorReportSchema(apk_path=path, error=to_error_detail(err))

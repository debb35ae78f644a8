# apkwarden/services/scan/service.py
from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from apkwarden import __version__
from apkwarden.common.logging import get_logger
from apkwarden.common.settings import AnalysisConfig
from apkwarden.domain.dataclasses.runs import ScanRun
from apkwarden.domain.entities.apk import ApkArchive
from apkwarden.domain.entities.dex import DexFile
from apkwarden.domain.entities.manifest import ManifestModel
from apkwarden.domain.entities.report import ApkInfo, ReportMeta, ScanReport
from apkwarden.domain.entities.rules import Finding, Location
from apkwarden.domain.entities.taint import FlowPath
from apkwarden.domain.entities.warnings import ScanWarning
from apkwarden.domain.entities.widget import WidgetDecl
from apkwarden.domain.enums.channel import Channel
from apkwarden.domain.enums.entry_kind import EntryKind
from apkwarden.domain.errors import ScanError
from apkwarden.services.axml import AxmlError, extract_layout_widgets, extract_manifest, parse_axml
from apkwarden.services.container.apk_reader import dex_numbering_gaps, open_apk
from apkwarden.services.dex import Program, parse_dex, resource_id_names
from apkwarden.services.malware.service import MalwareScanner
from apkwarden.services.pii import bind_pii_to_code, identify_pii_variables
from apkwarden.services.rules import (
    confirm_candidates,
    evaluate_manifest_rules,
    extract_candidate_methods,
)
from apkwarden.services.scan.data import AnalysisData
from apkwarden.services.taint import build_call_graph, confirm_flows, find_flows
from apkwarden.services.trackers import detect_trackers

log = get_logger(__name__)

LOG_PII_RULE = "LOG-PII"


def _utcnow() -> datetime:
    return datetime.now(timezone.utc)


def _warning_key(w: ScanWarning) -> tuple:
    return (w.code, w.location or "", w.message)


@contextmanager
def _stage(run: ScanRun, name: str) -> Iterator[None]:
    t0 = time.perf_counter()
    try:
        yield
    finally:
        run.record(name, time.perf_counter() - t0)


@dataclass
class ParsedApk:
    archive: ApkArchive
    manifest: ManifestModel
    dexes: List[DexFile]
    widgets: List[WidgetDecl]
    id_names: Dict[int, str]


def _parse_manifest(archive: ApkArchive) -> ManifestModel:
    entry = archive.manifest
    try:
        return extract_manifest(parse_axml(entry.data))
    except ScanError as e:
        raise e.located(entry.name)


def _parse_layouts(
    archive: ApkArchive,
    suffixes: Sequence[str],
    id_names: Dict[int, str],
    warnings: List[ScanWarning],
) -> List[WidgetDecl]:
    widgets: List[WidgetDecl] = []
    for entry in archive.entries_of_kind(EntryKind.LayoutXml):
        try:
            doc = parse_axml(entry.data)
        except AxmlError as e:
            warnings.append(ScanWarning("layout-unparsable", e.message, entry.name))
            continue
        for w in extract_layout_widgets(doc, entry.name, suffixes=suffixes, id_names=id_names):
            widgets.append(w)
            for ref in w.unresolved:
                warnings.append(
                    ScanWarning(
                        "unresolved-reference",
                        f"{w.widget_class} {ref} needs the resource table",
                        entry.name,
                    )
                )
    return widgets


def _fold_logged_flows(flows: Sequence[FlowPath], findings: Sequence[Finding]) -> List[FlowPath]:
    """Log-channel flows ending at a call already reported as LOG-PII are the same leak."""
    logged = {f.location for f in findings if f.rule_id == LOG_PII_RULE}
    return [
        p
        for p in flows
        if not (
            p.channel == Channel.Log
            and Location.in_code(p.sink.method, p.sink.site) in logged
        )
    ]


def _analyse(
    parsed: ParsedApk,
    data: AnalysisData,
    analysis: AnalysisConfig,
    run: ScanRun,
    warnings: List[ScanWarning],
) -> Tuple[List[Finding], List[FlowPath]]:
    dexes = parsed.dexes
    with _stage(run, "program"):
        program = Program(dexes)

    with _stage(run, "pii"):
        pii = identify_pii_variables(parsed.widgets, data.keywords)
        for dex in dexes:
            pii = bind_pii_to_code(
                dex, pii, keywords=data.keywords, id_names=parsed.id_names, program=program
            )

    with _stage(run, "callgraph"):
        cg = build_call_graph(dexes, parsed.manifest, policy=data.policy, program=program)

    with _stage(run, "rules"):
        findings = evaluate_manifest_rules(parsed.manifest, data.rules)
        candidates = [
            c
            for dex in dexes
            for c in extract_candidate_methods(
                dex, data.rules, program=program, result_hops=analysis.result_hops
            )
        ]
        findings += confirm_candidates(
            candidates, cg, pii, spec=data.spec, program=program, framework=data.framework
        )

    with _stage(run, "taint"):
        paths = find_flows(
            cg,
            dexes,
            data.spec,
            pii=pii,
            max_depth=analysis.taint_max_depth,
            field_rounds=analysis.field_rounds,
            warnings=warnings,
            program=program,
            framework=data.framework,
        )
        flows = _fold_logged_flows(confirm_flows(paths, cg, pii), findings)

    findings = sorted(set(findings), key=Finding.sort_key)
    return findings, flows


def parse_apk(
    path: Path | str, analysis: AnalysisConfig, warnings: List[ScanWarning]
) -> ParsedApk:
    """Container, manifest, DEX and layout parsing. Fatal problems raise ScanError."""
    archive = open_apk(path)
    for name in dex_numbering_gaps(archive):
        warnings.append(
            ScanWarning("dex-numbering-gap", "DEX entry outside the classesN sequence", name)
        )
    manifest = _parse_manifest(archive)
    dexes = [parse_dex(e.data, e.name) for e in archive.dex_entries]
    for dex in dexes:
        warnings.extend(dex.warnings)
    id_names = resource_id_names(dexes)
    widgets = _parse_layouts(archive, analysis.widget_suffixes, id_names, warnings)
    return ParsedApk(archive, manifest, dexes, widgets, id_names)


def scan_apk(
    path: Path | str,
    data: AnalysisData,
    *,
    analysis: Optional[AnalysisConfig] = None,
    malware: Optional[MalwareScanner] = None,
    clock: Callable[[], datetime] = _utcnow,
) -> ScanReport:
    """
    Run every analysis stage over one APK and assemble its report.

    Stages run in dependency order: container, manifest and layouts, DEX, PII, call graph,
    rules, taint, trackers, malware. Any fatal parse problem raises a ScanError that names
    the archive entry and byte offset; malware-service problems only add a warning.
    """
    analysis = analysis or AnalysisConfig()
    malware = malware or MalwareScanner()
    run = ScanRun()
    run.start()
    warnings: List[ScanWarning] = list(data.keywords.warnings)

    with _stage(run, "parse"):
        parsed = parse_apk(path, analysis, warnings)
    findings, flows = _analyse(parsed, data, analysis, run, warnings)

    with _stage(run, "trackers"):
        trackers = detect_trackers(parsed.dexes, data.trackers)
    with _stage(run, "malware"):
        verdict = malware.verdict(parsed.archive, warnings)

    run.stop()
    for stage, seconds in run.stages.items():
        log.debug("%s: %s took %.3fs", parsed.archive.path.name, stage, seconds)

    return ScanReport(
        apk=ApkInfo(
            path=str(path), sha256=parsed.archive.sha256, package=parsed.manifest.package
        ),
        findings=tuple(findings),
        flows=tuple(flows),
        trackers=tuple(trackers),
        malware=verdict,
        warnings=tuple(sorted(set(warnings), key=_warning_key)),
        meta=ReportMeta(
            tool_version=__version__,
            rule_count=data.rule_count,
            source_sink_count=data.source_sink_count,
            keyword_count=data.keyword_count,
            tracker_count=data.tracker_count,
            duration_sec=run.duration_sec,
            scanned_at=clock(),
        ),
    )

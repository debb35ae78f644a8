# apkwarden/services/scan/stats.py
from __future__ import annotations

from collections import Counter
from pathlib import Path
from typing import Dict, Iterable, List, Sequence

from apkwarden.domain.enums.rule_category import AssessmentCategory
from apkwarden.services.schemas.report import (
    CorpusFailureSchema,
    CorpusStatsSchema,
    MatrixCellSchema,
    ScanReportSchema,
)


def _prevalence(per_app: Iterable[set], n_apps: int) -> Dict[str, float]:
    counts: Counter = Counter()
    for keys in per_app:
        counts.update(keys)
    return {k: counts[k] / n_apps for k in sorted(counts)}


def source_sink_matrix(reports: Iterable[ScanReportSchema]) -> List[MatrixCellSchema]:
    """Confirmed flow counts per (source pattern, sink channel); cells sorted by key."""
    cells: Counter = Counter()
    for r in reports:
        cells.update((f.source.pattern, f.channel) for f in r.flows)
    return [
        MatrixCellSchema(source=src, sink=sink, count=n) for (src, sink), n in sorted(cells.items())
    ]


def compute_corpus_stats(
    reports: Sequence[ScanReportSchema],
    *,
    report_names: Sequence[str] = (),
    failures: Sequence[CorpusFailureSchema] = (),
) -> CorpusStatsSchema:
    """
    Corpus-level statistics from per-app reports. Prevalence is apps with at least one
    finding (or tracker, or item in a report section) over successfully scanned apps.
    """
    n_apps = len(reports)
    stats = CorpusStatsSchema(
        n_apps=n_apps,
        source_sink_matrix=source_sink_matrix(reports),
        reports=list(report_names),
        failures=list(failures),
    )
    if n_apps == 0:
        return stats
    stats.per_rule_prevalence = _prevalence(
        ({f.rule_id for f in r.findings} for r in reports), n_apps
    )
    stats.per_tracker_prevalence = _prevalence(
        ({t.name for t in r.trackers} for r in reports), n_apps
    )
    stats.per_category_prevalence = {
        cat: sum(1 for r in reports if r.summary.counts.get(cat, 0) > 0) / n_apps
        for cat in AssessmentCategory
    }
    return stats


def stats_from_report_files(paths: Iterable[Path]) -> CorpusStatsSchema:
    """Recompute the corpus statistics from emitted per-app report files."""
    paths = list(paths)
    reports = [ScanReportSchema.model_validate_json(p.read_bytes()) for p in paths]
    return compute_corpus_stats(reports, report_names=[p.name for p in paths])

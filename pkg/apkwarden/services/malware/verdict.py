# apkwarden/services/malware/verdict.py
from __future__ import annotations

from datetime import datetime
from typing import Any, Mapping

from apkwarden.domain.entities.trackers import MalwareVerdict
from apkwarden.domain.enums.verdict_source import VerdictSource
from apkwarden.services.malware.errors import RemoteMalformedResponse

FLAGGED_CATEGORIES = frozenset({"malicious", "suspicious"})


def _stats_and_results(
    attributes: Mapping[str, Any],
) -> tuple[Mapping[str, Any], Mapping[str, Any]]:
    # file objects carry last_analysis_*, analysis objects carry stats/results
    stats = attributes.get("last_analysis_stats", attributes.get("stats"))
    results = attributes.get("last_analysis_results", attributes.get("results")) or {}
    if not isinstance(stats, Mapping) or not isinstance(results, Mapping):
        raise RemoteMalformedResponse("report carries no analysis stats")
    return stats, results


def verdict_from_report(
    sha256: str, data: Mapping[str, Any], *, fetched_at: datetime
) -> MalwareVerdict:
    """
    Fold a remote report into a verdict. ``engines_total`` counts every engine that answered;
    an engine flags the file when it files it as malicious or suspicious.
    """
    attributes = data.get("attributes")
    if not isinstance(attributes, Mapping):
        raise RemoteMalformedResponse("report carries no attributes")
    stats, results = _stats_and_results(attributes)
    try:
        counts = {str(k): int(v) for k, v in stats.items()}
    except (TypeError, ValueError):
        raise RemoteMalformedResponse("analysis stats are not integers") from None
    if any(v < 0 for v in counts.values()):
        raise RemoteMalformedResponse("analysis stats are negative")

    total = sum(counts.values())
    flagged = sum(counts.get(c, 0) for c in FLAGGED_CATEGORIES)
    if results:
        total = max(total, len(results))

    labels = set()
    for engine in results.values():
        if not isinstance(engine, Mapping):
            continue
        if engine.get("category") in FLAGGED_CATEGORIES and engine.get("result"):
            labels.add(str(engine["result"]))

    return MalwareVerdict(
        sha256=sha256,
        engines_total=total,
        engines_flagged=min(flagged, total),
        labels=tuple(sorted(labels)),
        fetched_at=fetched_at,
        source=VerdictSource.Remote,
    )

# apkwarden/services/trackers/detector.py
from __future__ import annotations

from typing import Iterable, List, Sequence

from apkwarden.common.logging import get_logger
from apkwarden.domain.entities.dex import DexFile
from apkwarden.domain.entities.trackers import TrackerMatch, TrackerSignature

log = get_logger(__name__)


def detect_in_descriptors(
    descriptors: Iterable[str], sigs: Sequence[TrackerSignature]
) -> List[TrackerMatch]:
    classes = set(descriptors)
    out: List[TrackerMatch] = []
    for sig in sorted(sigs, key=lambda s: s.name):
        count = sum(1 for d in classes if sig.matches(d))
        if count:
            out.append(TrackerMatch(sig, count))
    return out


def detect_trackers(
    dexes: Sequence[DexFile], sigs: Sequence[TrackerSignature]
) -> List[TrackerMatch]:
    """Signatures with at least one class under one of their prefixes, ordered by name."""
    matches = detect_in_descriptors((d for dex in dexes for d in dex.class_descriptors), sigs)
    log.debug("trackers: %s", ", ".join(m.signature.name for m in matches) or "none")
    return matches

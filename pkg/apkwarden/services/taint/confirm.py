# apkwarden/services/taint/confirm.py
from __future__ import annotations

from dataclasses import replace
from typing import Iterable, List

from apkwarden.common.logging import get_logger
from apkwarden.domain.entities.pii import PiiVariable
from apkwarden.domain.entities.taint import FlowPath
from apkwarden.domain.enums.channel import Channel, SourceKind
from apkwarden.domain.enums.flow_status import FlowStatus
from apkwarden.services.taint.callgraph import CallGraph

log = get_logger(__name__)


def _intrinsic(path: FlowPath) -> bool:
    try:
        return SourceKind(path.source.label).intrinsic_pii
    except ValueError:
        return False


def confirm_flows(
    paths: Iterable[FlowPath], cg: CallGraph, pii: Iterable[PiiVariable]
) -> List[FlowPath]:
    """
    Keep the candidate paths whose source method is reachable from an entry point and whose
    value is personal data: an intrinsically sensitive source (location, device id, contacts,
    accounts) or a value tagged with a keyword of a known PII variable. Log sinks always need
    the keyword tag.
    """
    keywords = {v.matched_keyword for v in pii}
    out: List[FlowPath] = []
    dropped = 0
    for path in paths:
        if not cg.is_reachable(path.source.method):
            dropped += 1
            continue
        tagged = path.pii_tag is not None and path.pii_tag in keywords
        if path.channel == Channel.Log.value:
            keep = tagged
        else:
            keep = tagged or _intrinsic(path)
        if not keep:
            dropped += 1
            continue
        out.append(replace(path, status=FlowStatus.Confirmed))
    log.debug("confirmed %d flows, dropped %d", len(out), dropped)
    return sorted(set(out), key=FlowPath.sort_key)

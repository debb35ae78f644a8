# apkwarden/services/rules/confirm.py
from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from apkwarden.common.logging import get_logger
from apkwarden.domain.entities.dex import MethodId
from apkwarden.domain.entities.pii import PiiVariable
from apkwarden.domain.entities.rules import Candidate, Finding
from apkwarden.domain.entities.taint import TaintSpec
from apkwarden.domain.enums.channel import Channel
from apkwarden.domain.policies.framework_types import FrameworkTypes
from apkwarden.services.dex.program import Program
from apkwarden.services.pii.index import PiiIndex
from apkwarden.services.taint.callgraph import CallGraph
from apkwarden.services.taint.engine import TaintEngine

log = get_logger(__name__)

# intraprocedural def-use plus one level of argument passing
PII_GATE_DEPTH = 1

Site = Tuple[MethodId, int]


def _pii_at_sites(
    sites: Sequence[Site],
    cg: CallGraph,
    pii: Sequence[PiiVariable],
    *,
    spec: TaintSpec,
    program: Program,
    depth: int,
    framework: Optional[FrameworkTypes] = None,
) -> Dict[Site, str]:
    """PII keyword of a tainted argument for each site that receives one."""
    index = PiiIndex.from_variables(pii)
    if not sites or not index:
        return {}
    engine = TaintEngine(
        cg,
        spec,
        program=program,
        pii=index,
        max_depth=depth,
        sink_sites={s: Channel.Log.value for s in sites},
        pii_only=True,
        framework=framework,
    )
    roots = sorted({m for m in cg.reachable() if not m.is_boundary})
    tags: Dict[Site, str] = {}
    for flow in engine.run(roots):
        if flow.pii_tag is not None:
            tags.setdefault((flow.sink.method, flow.sink.site), flow.pii_tag)
    return tags


def confirm_candidates(
    cands: Iterable[Candidate],
    cg: CallGraph,
    pii: Sequence[PiiVariable],
    *,
    spec: Optional[TaintSpec] = None,
    program: Optional[Program] = None,
    depth: int = PII_GATE_DEPTH,
    framework: Optional[FrameworkTypes] = None,
) -> List[Finding]:
    """
    A candidate becomes a finding when its method is reachable from an entry point; rules
    that require PII also need a PII-tagged value in the arguments of the matched call.
    """
    reachable = [c for c in cands if cg.is_reachable(c.method)]
    gated = sorted(
        {(c.method, c.site) for c in reachable if c.rule.requires_pii and c.site is not None}
    )
    tags: Dict[Site, str] = {}
    if gated:
        prog = program or cg.program
        if prog is None:
            raise ValueError("confirming PII rules needs the program the call graph was built from")
        tags = _pii_at_sites(
            gated,
            cg,
            pii,
            spec=spec or TaintSpec(),
            program=prog,
            depth=depth,
            framework=framework,
        )

    findings = set()
    for c in reachable:
        tag: Optional[str] = None
        if c.rule.requires_pii:
            tag = tags.get((c.method, c.site)) if c.site is not None else None
            if tag is None:
                continue
        findings.add(
            Finding(
                rule_id=c.rule.id,
                category=c.rule.category,
                severity=c.rule.severity,
                evidence=c.evidence,
                location=c.location,
                pii_tag=tag,
                confirmed_called=True,
            )
        )
    log.debug("confirmed %d of %d rule candidates", len(findings), len(reachable))
    return sorted(findings, key=Finding.sort_key)

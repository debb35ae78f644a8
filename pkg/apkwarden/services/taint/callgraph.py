# apkwarden/services/taint/callgraph.py
from __future__ import annotations

from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from apkwarden.common.logging import get_logger
from apkwarden.domain.entities.dex import DexFile, MethodBody, MethodId, MethodRef
from apkwarden.domain.entities.manifest import ManifestModel
from apkwarden.domain.entities.taint import CallEdge
from apkwarden.domain.enums.invoke_kind import InvokeKind
from apkwarden.domain.policies.entry_points import EntryPointPolicy
from apkwarden.services.dex.dataflow import (
    ReachingDefinitions,
    argument_registers,
    is_param_def,
    param_def_register,
)
from apkwarden.services.dex.opcodes import invoke_kind_name
from apkwarden.services.dex.program import Program
from apkwarden.services.taint.entry_points import default_entry_point_policy

log = get_logger(__name__)

_NEW_INSTANCE = 0x22


def boundary_node(ref: MethodRef) -> MethodId:
    """Node for a callee outside the program (framework or missing library code)."""
    return MethodId.of(None, ref)


class CallGraph:
    """
    Directed multigraph of caller -> callee. Every edge is keyed by the call-site offset in
    the caller, so one site resolved to several overrides gives several edges and one callee
    called from several sites gives parallel edges.
    """

    def __init__(
        self,
        graph: nx.MultiDiGraph,
        entry_points: Iterable[MethodId],
        *,
        program: Optional[Program] = None,
    ):
        self.graph = graph
        self.entry_points: FrozenSet[MethodId] = frozenset(entry_points)
        missing = [m for m in self.entry_points if m not in graph]
        if missing:
            raise ValueError(f"entry points not in graph: {sorted(missing)[:3]}")
        self.program = program
        self._sites: Dict[Tuple[MethodId, int], List[MethodId]] = {}
        for caller, callee, site in graph.edges(keys=True):
            self._sites.setdefault((caller, site), []).append(callee)
        for targets in self._sites.values():
            targets.sort()
        self._reachable: Optional[FrozenSet[MethodId]] = None

    @property
    def nodes(self) -> List[MethodId]:
        return sorted(self.graph.nodes)

    @property
    def edges(self) -> List[CallEdge]:
        return sorted(CallEdge(u, v, k) for u, v, k in self.graph.edges(keys=True))

    @property
    def boundary_nodes(self) -> List[MethodId]:
        return sorted(n for n in self.graph.nodes if n.is_boundary)

    def __contains__(self, mid: MethodId) -> bool:
        return mid in self.graph

    def targets(self, caller: MethodId, site: int) -> List[MethodId]:
        return self._sites.get((caller, site), [])

    def callees(self, caller: MethodId) -> List[MethodId]:
        return sorted(set(self.graph.successors(caller))) if caller in self.graph else []

    def callers(self, callee: MethodId) -> List[MethodId]:
        return sorted(set(self.graph.predecessors(callee))) if callee in self.graph else []

    def reachable(self) -> FrozenSet[MethodId]:
        """Entry points plus everything they transitively call."""
        if self._reachable is None:
            out: Set[MethodId] = set(self.entry_points)
            for ep in self.entry_points:
                out |= nx.descendants(self.graph, ep)
            self._reachable = frozenset(out)
        return self._reachable

    def is_reachable(self, mid: MethodId) -> bool:
        return mid in self.reachable()

    def without_entry_points(self, removed: Iterable[MethodId]) -> "CallGraph":
        gone = set(removed)
        return CallGraph(
            self.graph, (m for m in self.entry_points if m not in gone), program=self.program
        )


# ---- construction --------------------------------------------------------------------
def _resolve_site(program: Program, kind: InvokeKind, ref: MethodRef) -> List[MethodId]:
    proto = ref.prototype.descriptor
    if kind.dispatches:
        targets = program.dispatch_targets(ref)
    else:
        hit = program.resolve(ref.class_descriptor, ref.name, proto)
        targets = [hit] if hit is not None else []
    return targets or [boundary_node(ref)]


def _methods_named(program: Program, descriptor: str, names: Sequence[str]) -> List[MethodId]:
    """Methods called ``names`` declared by a class or its program superclasses."""
    out: List[MethodId] = []
    wanted = set(names)
    for desc in [descriptor] + program.superclasses(descriptor):
        cls = program.class_def(desc)
        if cls is None:
            break
        for m in cls.methods:
            if m.ref.name in wanted:
                mid = program.declared(desc, m.ref.name, m.ref.prototype.descriptor)
                if mid is not None and mid not in out:
                    out.append(mid)
    return out


def _listener_classes(mid: MethodId, body: MethodBody, policy: EntryPointPolicy) -> Set[str]:
    """Classes of objects handed to a listener-registration call inside one method."""
    found: Set[str] = set()
    rd: Optional[ReachingDefinitions] = None
    for ins in body.instructions:
        if not ins.is_invoke or ins.method is None:
            continue
        if not policy.is_registration(ins.method.name):
            continue
        rd = rd or ReachingDefinitions(body)
        static = invoke_kind_name(ins.opcode) == InvokeKind.static
        for reg in argument_registers(ins)[0 if static else 1 :]:
            found |= _allocated_classes(rd, body, mid, ins.offset, reg, set())
    return found


def _allocated_classes(
    rd: ReachingDefinitions, body: MethodBody, mid: MethodId, at: int, reg: int, seen: Set[int]
) -> Set[str]:
    out: Set[str] = set()
    for d in rd.defs_at(at, reg):
        if d in seen:
            continue
        seen.add(d)
        if is_param_def(d):
            if not body.is_static and param_def_register(d) == body.first_param_register:
                out.add(mid.class_descriptor)
            continue
        ins = rd.defining(d)
        if ins is None:
            continue
        if ins.opcode == _NEW_INSTANCE and ins.type_descriptor:
            out.add(ins.type_descriptor)
        elif 0x07 <= ins.opcode <= 0x09:
            out |= _allocated_classes(rd, body, mid, d, ins.registers[1], seen)
    return out


def find_entry_points(
    program: Program, manifest: ManifestModel, policy: EntryPointPolicy
) -> Set[MethodId]:
    """
    Methods the framework calls directly: lifecycle methods of manifest components (and of
    the Application subclass), plus callbacks of objects registered as listeners in code.
    """
    entries: Set[MethodId] = set()
    for comp in manifest.components:
        if comp.descriptor in program:
            entries.update(
                _methods_named(program, comp.descriptor, policy.lifecycle_names(comp.kind))
            )
    app = manifest.application_descriptor
    if app and app in program:
        names = policy.application + (("<init>", "<clinit>") if policy.constructors else ())
        entries.update(_methods_named(program, app, names))
    if policy.registration and policy.callbacks:
        listeners: Set[str] = set()
        for mid, body in program.bodies():
            listeners |= _listener_classes(mid, body, policy)
        for desc in sorted(listeners):
            if desc in program:
                entries.update(_methods_named(program, desc, policy.callbacks))
    return entries


def build_call_graph(
    dexes: Sequence[DexFile],
    manifest: ManifestModel,
    *,
    policy: Optional[EntryPointPolicy] = None,
    program: Optional[Program] = None,
) -> CallGraph:
    """
    One node per defined method, one edge per (call site, resolved target).

    Static, direct and super calls go to the declaration found by walking the superclass
    chain; virtual and interface calls go to every concrete override reachable by Class
    Hierarchy Analysis. Calls with no program target end in a boundary node.
    """
    program = program or Program(dexes)
    policy = policy or default_entry_point_policy()
    g = nx.MultiDiGraph()
    g.add_nodes_from(program.method_ids())
    for caller, body in program.bodies():
        for ins in body.instructions:
            if not ins.is_invoke or ins.method is None:
                continue
            kind = InvokeKind(invoke_kind_name(ins.opcode))
            for callee in _resolve_site(program, kind, ins.method):
                g.add_edge(caller, callee, key=ins.offset, kind=kind.value)
    entries = find_entry_points(program, manifest, policy)
    cg = CallGraph(g, entries, program=program)
    log.debug(
        "call graph: %d nodes (%d boundary), %d edges, %d entry points",
        g.number_of_nodes(),
        len(cg.boundary_nodes),
        g.number_of_edges(),
        len(entries),
    )
    return cg

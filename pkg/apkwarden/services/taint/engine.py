# apkwarden/services/taint/engine.py
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    List,
    Mapping,
    MutableSequence,
    Optional,
    Sequence,
    Set,
    Tuple,
)

from apkwarden.common.logging import get_logger
from apkwarden.domain.entities.dex import DexFile, Instruction, MethodBody, MethodId, MethodRef
from apkwarden.domain.entities.pii import PiiVariable
from apkwarden.domain.entities.taint import (
    CallEdge,
    FlowEndpoint,
    FlowPath,
    TaintLabel,
    TaintSpec,
)
from apkwarden.domain.entities.warnings import ScanWarning
from apkwarden.domain.enums.channel import SourceKind
from apkwarden.domain.policies.framework_types import FrameworkTypes
from apkwarden.services.dex.dataflow import (
    RESULT,
    ReachingDefinitions,
    argument_registers,
    param_registers,
    register_effects,
    successors,
)
from apkwarden.services.dex.opcodes import STATIC_INVOKES
from apkwarden.services.dex.program import Program
from apkwarden.services.pii.index import PiiIndex
from apkwarden.services.taint.callgraph import CallGraph
from apkwarden.services.taint.framework_types import default_framework_types

log = get_logger(__name__)

Labels = FrozenSet[TaintLabel]
State = Dict[int, Labels]
EMPTY: Labels = frozenset()

_COLUMN_LOOKUPS = frozenset({"getColumnIndex", "getColumnIndexOrThrow"})
_UNTAINTED_RETURNS = frozenset({"V", "Z"})


def _union(sets: Iterable[Labels]) -> Labels:
    out: Set[TaintLabel] = set()
    for s in sets:
        out |= s
    return frozenset(out)


@dataclass
class _Frame:
    """One method being analysed under one entry state."""

    mid: MethodId
    body: MethodBody
    remaining: int
    returned: Set[TaintLabel] = field(default_factory=set)
    _rd: Optional[ReachingDefinitions] = None

    @property
    def rd(self) -> ReachingDefinitions:
        if self._rd is None:
            self._rd = ReachingDefinitions(self.body)
        return self._rd


class TaintEngine:
    """
    Forward taint over the call graph.

    Registers are tracked flow-sensitively inside a method. Fields are one taint cell per
    field identity shared by the whole program; rounds repeat until the field map is stable
    (at most ``field_rounds``). Calls into program methods are analysed under the caller's
    argument taint, memoised per (method, entry taint, remaining depth), and every label
    records the call edges crossed since its source.

    ``sink_sites`` replaces the source/sink file's sinks by an explicit set of call sites
    mapped to a channel label; ``pii_only`` keeps only sources carrying a PII keyword.
    ``framework`` continues class ancestry past the APK into platform base classes.
    """

    def __init__(
        self,
        cg: CallGraph,
        spec: TaintSpec,
        *,
        program: Program,
        pii: Optional[PiiIndex] = None,
        max_depth: int = 6,
        field_rounds: int = 4,
        sink_sites: Optional[Mapping[Tuple[MethodId, int], str]] = None,
        pii_only: bool = False,
        framework: Optional[FrameworkTypes] = None,
    ):
        if max_depth < 0:
            raise ValueError("max_depth must be >= 0")
        self.cg = cg
        self.spec = spec
        self.program = program
        self.pii = pii or PiiIndex()
        self.max_depth = max_depth
        self.field_rounds = max(1, field_rounds)
        self.sink_sites = sink_sites
        self.pii_only = pii_only
        self.framework = framework if framework is not None else default_framework_types()
        self.fields: Dict[str, Labels] = {}
        self.flows: Set[FlowPath] = set()
        self._warnings: Dict[str, ScanWarning] = {}
        self._memo: Dict[tuple, Labels] = {}
        self._ancestors: Dict[str, Tuple[str, ...]] = {}

    @property
    def warnings(self) -> List[ScanWarning]:
        return sorted(self._warnings.values())

    # ---- driver ------------------------------------------------------------------------
    def run(self, roots: Optional[Sequence[MethodId]] = None) -> List[FlowPath]:
        """Analyse every root (default: all program methods) with untainted parameters."""
        order = list(roots) if roots is not None else list(self.program.method_ids())
        for round_no in range(1, self.field_rounds + 1):
            before = dict(self.fields)
            self._memo.clear()
            for mid in order:
                self._summary(mid, {}, self.max_depth)
            if self.fields == before:
                break
            log.debug("taint round %d: %d tainted fields", round_no, len(self.fields))
        return sorted(self.flows, key=FlowPath.sort_key)

    def _summary(self, mid: MethodId, entry: Dict[int, Labels], remaining: int) -> Labels:
        key = (mid, frozenset(entry.items()), remaining)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        # provisional answer for recursive calls under the same key
        self._memo[key] = EMPTY
        body = self.program.body(mid)
        result = EMPTY if body is None else self._analyse(_Frame(mid, body, remaining), entry)
        self._memo[key] = result
        return result

    # ---- intraprocedural ---------------------------------------------------------------
    def _analyse(self, frame: _Frame, entry: Dict[int, Labels]) -> Labels:
        instructions = [i for i in frame.body.instructions if not i.is_payload]
        if not instructions:
            return EMPTY
        regs = param_registers(frame.body, frame.body.method.prototype.parameters)
        initial: State = {}
        for i, labels in entry.items():
            if i < len(regs) and labels:
                initial[regs[i]] = labels
        states: Dict[int, State] = {instructions[0].offset: initial}
        queue = deque([instructions[0].offset])
        queued = {instructions[0].offset}
        while queue:
            off = queue.popleft()
            queued.discard(off)
            ins = frame.body.at(off)
            state = dict(states[off])
            self._step(frame, ins, state)
            for succ in successors(frame.body, ins):
                if self._merge(states, succ, state) and succ not in queued:
                    queue.append(succ)
                    queued.add(succ)
        return frozenset(frame.returned)

    @staticmethod
    def _merge(states: Dict[int, State], offset: int, incoming: State) -> bool:
        cur = states.get(offset)
        if cur is None:
            states[offset] = dict(incoming)
            return True
        changed = False
        for reg, labels in incoming.items():
            old = cur.get(reg, EMPTY)
            if not labels <= old:
                cur[reg] = old | labels
                changed = True
        return changed

    def _step(self, frame: _Frame, ins: Instruction, state: State) -> None:
        op = ins.opcode
        defs, uses = register_effects(ins)
        if ins.is_invoke:
            self._invoke(frame, ins, state)
            return
        if 0x0F <= op <= 0x11:
            frame.returned |= state.get(ins.registers[0], EMPTY)
            return
        if op in (0x0D, 0x20, 0x23):
            # move-exception: exception edges are not followed, the caught value is clean
            value = EMPTY
        elif 0x4B <= op <= 0x51:
            # one cell per array object
            arr = ins.registers[1]
            state[arr] = state.get(arr, EMPTY) | state.get(ins.registers[0], EMPTY)
            return
        elif 0x59 <= op <= 0x5F or 0x67 <= op <= 0x6D:
            self._store_field(ins, state.get(ins.registers[0], EMPTY))
            return
        elif 0x52 <= op <= 0x58 or 0x60 <= op <= 0x66:
            value = self._load_field(frame, ins)
        elif 0x44 <= op <= 0x4A:
            value = state.get(ins.registers[1], EMPTY)
        else:
            value = _union(state.get(r, EMPTY) for r in uses)
        for reg in defs:
            if value:
                state[reg] = value
            else:
                state.pop(reg, None)

    # ---- fields ------------------------------------------------------------------------
    def _store_field(self, ins: Instruction, labels: Labels) -> None:
        if not labels or ins.field is None:
            return
        key = str(ins.field)
        old = self.fields.get(key, EMPTY)
        if not labels <= old:
            self.fields[key] = old | labels

    def _load_field(self, frame: _Frame, ins: Instruction) -> Labels:
        if ins.field is None:
            return EMPTY
        value = self.fields.get(str(ins.field), EMPTY)
        tag = self.pii.field_tag(ins.field)
        if tag is not None:
            source = FlowEndpoint(frame.mid, ins.offset, str(ins.field), SourceKind.PiiField.value)
            value = value | {TaintLabel(source, SourceKind.PiiField, tag)}
        return value

    # ---- calls -------------------------------------------------------------------------
    def _invoke(self, frame: _Frame, ins: Instruction, state: State) -> None:
        ref = ins.method
        state.pop(RESULT, None)
        if ref is None:
            return
        args = argument_registers(ins)
        static = ins.opcode in STATIC_INVOKES
        arg_taint = [state.get(r, EMPTY) for r in args]
        explicit = arg_taint if static else arg_taint[1:]

        self._check_sink(frame, ins, ref, explicit)

        targets = [t for t in self.cg.targets(frame.mid, ins.offset) if self.program.is_concrete(t)]
        result = EMPTY
        if targets:
            for target in targets:
                result |= self._descend(frame, ins, target, arg_taint)
        else:
            incoming = _union(explicit)
            if ref.prototype.return_type not in _UNTAINTED_RETURNS:
                result = _union(arg_taint)
            if not static and args and incoming:
                state[args[0]] = state.get(args[0], EMPTY) | incoming

        label = self._source(frame, ins, ref)
        if label is not None:
            if label.kind == SourceKind.UserInput:
                # the text read replaces the view lookup as the origin
                result = frozenset(lab for lab in result if lab.kind != SourceKind.UserInput)
            result = result | {label}
        if result:
            state[RESULT] = result

    def _descend(
        self, frame: _Frame, ins: Instruction, target: MethodId, arg_taint: List[Labels]
    ) -> Labels:
        edge = CallEdge(frame.mid, target, ins.offset)
        if frame.remaining <= 0:
            if any(arg_taint):
                self._truncated(edge)
            return EMPTY
        entry: Dict[int, Labels] = {}
        for i, labels in enumerate(arg_taint):
            kept = set()
            for lab in labels:
                if len(lab.chain) >= self.max_depth:
                    self._truncated(edge)
                    continue
                kept.add(replace(lab, chain=lab.chain + (edge,)))
            if kept:
                entry[i] = frozenset(kept)
        returned = self._summary(target, entry, frame.remaining - 1)
        out: Set[TaintLabel] = set()
        for lab in returned:
            if lab.chain and lab.chain[-1] == edge:
                out.add(replace(lab, chain=lab.chain[:-1]))
            elif len(lab.chain) < self.max_depth:
                out.add(replace(lab, chain=lab.chain + (edge,)))
            else:
                self._truncated(edge)
        return frozenset(out)

    def _truncated(self, edge: CallEdge) -> None:
        where = str(edge)
        self._warnings.setdefault(
            where,
            ScanWarning("depth-exceeded", f"taint dropped past call depth {self.max_depth}", where),
        )

    def _ancestors_of(self, descriptor: str) -> Tuple[str, ...]:
        hit = self._ancestors.get(descriptor)
        if hit is None:
            hit = self.framework.extend(descriptor, self.program.ancestors(descriptor))
            self._ancestors[descriptor] = hit
        return hit

    def _check_sink(
        self, frame: _Frame, ins: Instruction, ref: MethodRef, explicit: List[Labels]
    ) -> None:
        tainted = _union(explicit)
        if not tainted:
            return
        if self.sink_sites is not None:
            channel = self.sink_sites.get((frame.mid, ins.offset))
            pattern = str(ref)
        else:
            sink = self.spec.sink_for(ref, self._ancestors_of(ref.class_descriptor))
            channel = sink.label.value if sink is not None else None
            pattern = str(sink) if sink is not None else ""
        if channel is None:
            return
        sink_end = FlowEndpoint(frame.mid, ins.offset, pattern, channel)
        callee = MethodId.of(None, ref)
        for lab in tainted:
            self.flows.add(
                FlowPath(
                    source=lab.source,
                    sink=sink_end,
                    call_chain=lab.chain + (CallEdge(frame.mid, callee, ins.offset),),
                    pii_tag=lab.pii_tag,
                )
            )

    def _source(self, frame: _Frame, ins: Instruction, ref: MethodRef) -> Optional[TaintLabel]:
        view_tag = self.pii.text_site(frame.mid, ins.offset)
        pattern = self.spec.source_for(ref, self._ancestors_of(ref.class_descriptor))
        if pattern is None and view_tag is None:
            return None
        if pattern is None:
            kind, text = SourceKind.UserInput, str(ref)
        else:
            kind, text = SourceKind(pattern.label), str(pattern)
        tag = view_tag
        if tag is None and kind == SourceKind.Database:
            tag = self._column_tag(frame, ins) or self.pii.method_literal(frame.mid)
        if self.pii_only and tag is None:
            return None
        return TaintLabel(FlowEndpoint(frame.mid, ins.offset, text, kind.value), kind, tag)

    def _column_tag(self, frame: _Frame, ins: Instruction) -> Optional[str]:
        """PII keyword of the column name behind ``cursor.getX(cursor.getColumnIndex("..."))``."""
        args = argument_registers(ins)
        if len(args) < 2:
            return None
        rd = frame.rd
        for d in sorted(rd.defs_at(ins.offset, args[1])):
            call = rd.producer(d)
            if call is None or call.method is None or call.method.name not in _COLUMN_LOOKUPS:
                continue
            call_args = argument_registers(call)
            if len(call_args) < 2:
                continue
            for cd in sorted(rd.defs_at(call.offset, call_args[1])):
                const = rd.defining(cd)
                if const is not None and const.string is not None:
                    tag = self.pii.literal(frame.mid, const.offset)
                    if tag is not None:
                        return tag
        return None


def find_flows(
    cg: CallGraph,
    dexes: Sequence[DexFile],
    spec: TaintSpec,
    *,
    pii: PiiIndex | Iterable[PiiVariable] = (),
    max_depth: int = 6,
    field_rounds: int = 4,
    warnings: Optional[MutableSequence[ScanWarning]] = None,
    program: Optional[Program] = None,
    framework: Optional[FrameworkTypes] = None,
) -> List[FlowPath]:
    """Candidate source -> sink paths, canonically sorted."""
    program = program or cg.program or Program(dexes)
    index = pii if isinstance(pii, PiiIndex) else PiiIndex.from_variables(pii)
    engine = TaintEngine(
        cg,
        spec,
        program=program,
        pii=index,
        max_depth=max_depth,
        field_rounds=field_rounds,
        framework=framework,
    )
    flows = engine.run()
    if warnings is not None:
        warnings.extend(engine.warnings)
    log.debug("taint: %d candidate flows", len(flows))
    return flows

# apkwarden/services/rules/matchers.py
from __future__ import annotations

from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from apkwarden.common.logging import get_logger
from apkwarden.domain.entities.dex import DexFile, Instruction, MethodBody, MethodId
from apkwarden.domain.entities.rules import Candidate, Matcher, Rule
from apkwarden.services.dex.code import decode_code
from apkwarden.services.dex.dataflow import (
    ReachingDefinitions,
    argument_registers,
    result_register,
)
from apkwarden.services.dex.opcodes import STATIC_INVOKES
from apkwarden.services.dex.program import Program

log = get_logger(__name__)

_DEFAULT_RESULT_HOPS = 3


class _MethodScan:
    """Matcher evaluation over one decoded method; reaching definitions computed on demand."""

    def __init__(self, mid: MethodId, body: MethodBody, result_hops: int):
        self.mid = mid
        self.body = body
        self.result_hops = result_hops
        self._rd: Optional[ReachingDefinitions] = None

    @property
    def rd(self) -> ReachingDefinitions:
        if self._rd is None:
            self._rd = ReachingDefinitions(self.body)
        return self._rd

    def calls(self, matcher: Matcher) -> Iterator[Instruction]:
        for ins in self.body.instructions:
            if ins.is_invoke and ins.method is not None:
                if any(p.matches(ins.method) for p in matcher.methods):
                    yield ins

    @staticmethod
    def explicit_arg(ins: Instruction, index: int) -> Optional[int]:
        args = argument_registers(ins)
        if ins.opcode not in STATIC_INVOKES:
            args = args[1:]
        return args[index] if index < len(args) else None

    # ---- per kind ----------------------------------------------------------------------
    def invoke(self, m: Matcher) -> Iterator[Tuple[Instruction, str]]:
        for ins in self.calls(m):
            yield ins, f"calls {ins.method}"

    def invoke_const_arg(self, m: Matcher) -> Iterator[Tuple[Instruction, str]]:
        values = m.params.get("values")
        regex = m.params.get("regex")
        for ins in self.calls(m):
            reg = self.explicit_arg(ins, m.params["arg"])
            if reg is None:
                continue
            consts = self.rd.constant_values(ins.offset, reg)
            if not consts:
                continue
            for value in consts:
                if values is not None and not _value_in(value, values):
                    continue
                if regex is not None and not (isinstance(value, str) and regex.search(value)):
                    continue
                yield ins, f"{ins.method} with constant {value!r}"
                break

    def invoke_nonconst_arg(self, m: Matcher) -> Iterator[Tuple[Instruction, str]]:
        for ins in self.calls(m):
            reg = self.explicit_arg(ins, m.params["arg"])
            if reg is not None and not self.rd.is_constant(ins.offset, reg):
                yield ins, f"{ins.method} with a non-literal argument {m.params['arg']}"

    def invoke_const_derived_arg(self, m: Matcher) -> Iterator[Tuple[Instruction, str]]:
        for ins in self.calls(m):
            reg = self.explicit_arg(ins, m.params["arg"])
            if reg is not None and self.rd.constant_derived(ins.offset, reg):
                yield ins, f"{ins.method} with argument {m.params['arg']} built from literals"

    def invoke_result_flows(self, m: Matcher) -> Iterator[Tuple[Instruction, str]]:
        hops = int(m.params.get("result_hops", self.result_hops))
        for ins in self.calls(m):
            sink = self._result_reaches(ins, m, hops)
            if sink is not None:
                yield ins, f"result of {ins.method} reaches {sink.method}"

    def _result_reaches(self, ins: Instruction, m: Matcher, hops: int) -> Optional[Instruction]:
        reg = result_register(self.body, ins)
        if reg is None:
            return None
        through = m.params.get("through", frozenset())
        work = [(ins.next_offset, reg, hops)]
        seen = set()
        while work:
            d, reg, left = work.pop()
            if (d, reg) in seen:
                continue
            seen.add((d, reg))
            for use in self.rd.uses_of(d, reg):
                if 0x01 <= use.opcode <= 0x09:
                    work.append((use.offset, use.registers[0], left))
                    continue
                if not use.is_invoke or use.method is None:
                    continue
                if any(p.matches(use.method) for p in m.params["to"]):
                    return use
                if left > 0 and use.method.name in through:
                    nxt = result_register(self.body, use)
                    if nxt is not None:
                        work.append((use.next_offset, nxt, left - 1))
        return None

    def const_string_regex(self, m: Matcher) -> Iterator[Tuple[Instruction, str]]:
        regex = m.params["regex"]
        exclude = m.params.get("exclude", frozenset())
        for ins in self.body.instructions:
            s = ins.string
            if s is None:
                continue
            for hit in regex.finditer(s):
                if hit.group(0) not in exclude:
                    yield ins, f"string literal contains {hit.group(0)!r}"
                    break


def _value_in(value: object, allowed: Sequence[object]) -> bool:
    if isinstance(value, str):
        folded = value.casefold()
        return any(isinstance(a, str) and a.casefold() == folded for a in allowed)
    return any(not isinstance(a, str) and a == value for a in allowed)


def _method_bodies(
    dex: DexFile, program: Optional[Program]
) -> Iterator[Tuple[MethodId, MethodBody]]:
    for cls in dex.classes:
        for m in cls.methods:
            if not m.has_code:
                continue
            mid = MethodId.of(dex.provenance, m.ref)
            body = program.body(mid) if program is not None else None
            yield mid, body if body is not None else decode_code(dex, m)


def extract_candidate_methods(
    dex: DexFile,
    rules: Sequence[Rule],
    *,
    program: Optional[Program] = None,
    result_hops: int = _DEFAULT_RESULT_HOPS,
) -> List[Candidate]:
    """
    Match the code rules against every method of one DEX file. One candidate per
    (rule, method, site); the first matcher of a rule that fires supplies the evidence.
    """
    code_rules = [r for r in rules if not r.is_manifest]
    found: Dict[Tuple[str, MethodId, int], Candidate] = {}
    for mid, body in _method_bodies(dex, program):
        scan = _MethodScan(mid, body, result_hops)
        for rule in code_rules:
            for matcher in rule.matchers:
                for ins, evidence in getattr(scan, matcher.kind)(matcher):
                    key = (rule.id, mid, ins.offset)
                    if key in found:
                        continue
                    found[key] = Candidate(
                        rule=rule,
                        method=mid,
                        site=ins.offset,
                        evidence=evidence,
                        callee=ins.method,
                        arg_registers=tuple(argument_registers(ins)) if ins.is_invoke else (),
                    )
    out = sorted(found.values(), key=lambda c: (c.rule.id, c.location.sort_key()))
    log.debug("%s: %d rule candidates", dex.provenance, len(out))
    return out

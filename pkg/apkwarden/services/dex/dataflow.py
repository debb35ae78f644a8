# apkwarden/services/dex/dataflow.py
from __future__ import annotations

from collections import deque
from functools import cached_property
from typing import Dict, FrozenSet, List, Optional, Set, Tuple, Union

from apkwarden.domain.entities.dex import (
    Instruction,
    MethodBody,
    PackedSwitchPayload,
    SparseSwitchPayload,
)
from apkwarden.services.dex.opcodes import INVOKE_OPCODES, STATIC_INVOKES

# Pseudo-register holding the value of the last invoke / filled-new-array, read by move-result.
RESULT = -1

ConstValue = Union[str, int]

_WIDE_DEST = frozenset(
    {0x04, 0x05, 0x06, 0x0B, 0x16, 0x17, 0x18, 0x19, 0x45, 0x53, 0x61}
    | {0x7D, 0x7E, 0x80, 0x81, 0x83, 0x86, 0x88, 0x89, 0x8B}
    | set(range(0x9B, 0xA6))
    | set(range(0xAB, 0xB0))
    | set(range(0xBB, 0xC6))
    | set(range(0xCB, 0xD0))
)
_WIDE_SRC_MOVE = frozenset({0x04, 0x05, 0x06})
# filled-new-array and invoke-polymorphic/custom also write RESULT
_CALL_LIKE = frozenset({0x24, 0x25, 0xFA, 0xFB, 0xFC, 0xFD})

# Calls whose result is a constant when their inputs are: conversions used to build key material.
CONST_CONVERSIONS = frozenset(
    {"getBytes", "toCharArray", "decode", "valueOf", "toString", "trim", "substring", "clone"}
)


def param_def(register: int) -> int:
    """Definition marker for an incoming parameter register (negative, distinct from RESULT)."""
    return -2 - register


def is_param_def(d: int) -> bool:
    return d <= -2


def param_def_register(d: int) -> int:
    return -2 - d


def is_wide(descriptor: str) -> bool:
    return descriptor in ("J", "D")


def register_effects(ins: Instruction) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """(defined registers, used registers) of one instruction; RESULT stands for the call result."""
    op = ins.opcode
    r = ins.registers
    calls = op in INVOKE_OPCODES or op in _CALL_LIKE
    if ins.is_payload or (not r and not calls):
        return (), ()
    wide = op in _WIDE_DEST

    def dst(a: int) -> Tuple[int, ...]:
        return (a, a + 1) if wide else (a,)

    if 0x01 <= op <= 0x09:
        src = (r[1], r[1] + 1) if op in _WIDE_SRC_MOVE else (r[1],)
        return dst(r[0]), src
    if 0x0A <= op <= 0x0C:
        return dst(r[0]), (RESULT,)
    if op == 0x0D:
        return (r[0],), ()
    if 0x0F <= op <= 0x11:
        return (), ((r[0], r[0] + 1) if op == 0x10 else (r[0],))
    if 0x12 <= op <= 0x1C or op in (0x22, 0xFE, 0xFF):
        return dst(r[0]), ()
    if op in (0x1D, 0x1E, 0x1F, 0x26, 0x27, 0x2B, 0x2C) or 0x38 <= op <= 0x3D:
        return (), (r[0],)
    if op in (0x20, 0x21, 0x23) or 0x7B <= op <= 0x8F or 0xD0 <= op <= 0xE2:
        return dst(r[0]), (r[1],)
    if 0x2D <= op <= 0x31 or 0x44 <= op <= 0x4A or 0x90 <= op <= 0xAF:
        return dst(r[0]), r[1:]
    if 0x32 <= op <= 0x37 or 0x4B <= op <= 0x51 or 0x59 <= op <= 0x5F:
        return (), r
    if 0x52 <= op <= 0x58:
        return dst(r[0]), (r[1],)
    if 0x60 <= op <= 0x66:
        return dst(r[0]), ()
    if 0x67 <= op <= 0x6D:
        return (), (r[0],)
    if calls:
        return (RESULT,), r
    if 0xB0 <= op <= 0xCF:
        return dst(r[0]), r
    return (), ()


def successors(body: MethodBody, ins: Instruction) -> List[int]:
    """Control-flow successors by byte offset. Exception edges are not modelled."""
    op = ins.opcode
    if ins.is_payload or 0x0E <= op <= 0x11 or op == 0x27:
        return []
    if 0x28 <= op <= 0x2A:
        return [ins.branch_target] if ins.branch_target is not None else []
    out: List[int] = []
    if op in (0x2B, 0x2C) and ins.branch_target is not None and body.has_offset(ins.branch_target):
        payload = body.at(ins.branch_target).payload
        if isinstance(payload, (PackedSwitchPayload, SparseSwitchPayload)):
            out.extend(ins.offset + 2 * t for t in payload.targets)
    elif 0x32 <= op <= 0x3D and ins.branch_target is not None:
        out.append(ins.branch_target)
    nxt = ins.next_offset
    if body.has_offset(nxt) and not body.at(nxt).is_payload:
        out.insert(0, nxt)
    return [o for o in dict.fromkeys(out) if body.has_offset(o)]


def argument_registers(ins: Instruction) -> List[int]:
    """
    One register per logical argument of an invoke (receiver first for instance calls);
    wide arguments are represented by their first register.
    """
    method = ins.method
    regs = list(ins.registers)
    if method is None:
        return regs
    out: List[int] = []
    i = 0
    if ins.opcode not in STATIC_INVOKES:
        if regs:
            out.append(regs[0])
        i = 1
    for p in method.prototype.parameters:
        if i >= len(regs):
            break
        out.append(regs[i])
        i += 2 if is_wide(p) else 1
    return out


def param_registers(body: MethodBody, parameters: Tuple[str, ...]) -> List[int]:
    """Incoming registers, one per logical parameter (``this`` first for instance methods)."""
    out: List[int] = []
    reg = body.first_param_register
    if not body.is_static:
        out.append(reg)
        reg += 1
    for p in parameters:
        out.append(reg)
        reg += 2 if is_wide(p) else 1
    return out


def result_register(body: MethodBody, ins: Instruction) -> Optional[int]:
    """Register written by the move-result that directly follows ``ins``, if any."""
    nxt = ins.next_offset
    if not body.has_offset(nxt):
        return None
    follow = body.at(nxt)
    if 0x0A <= follow.opcode <= 0x0C:
        return follow.registers[0]
    return None


class ReachingDefinitions:
    """
    Classic forward reaching-definitions over one method body.

    A definition is the byte offset of the defining instruction; incoming parameters are
    ``param_def(register)`` markers. Unreachable code (catch handlers, since exception edges
    are not modelled) starts with no definitions.
    """

    def __init__(self, body: MethodBody):
        self.body = body
        self._in: Dict[int, Dict[int, FrozenSet[int]]] = {}
        self._solve()

    def _entry_state(self) -> Dict[int, FrozenSet[int]]:
        state: Dict[int, FrozenSet[int]] = {}
        first = self.body.first_param_register
        for reg in range(first, self.body.registers_size):
            state[reg] = frozenset({param_def(reg)})
        return state

    def _solve(self) -> None:
        instructions = [i for i in self.body.instructions if not i.is_payload]
        if not instructions:
            return
        for ins in instructions:
            self._in[ins.offset] = {}
        self._in[instructions[0].offset] = self._entry_state()
        queue = deque(i.offset for i in instructions)
        queued: Set[int] = set(queue)
        while queue:
            off = queue.popleft()
            queued.discard(off)
            ins = self.body.at(off)
            out = dict(self._in[off])
            defs, _uses = register_effects(ins)
            for reg in defs:
                out[reg] = frozenset({off})
            for succ in successors(self.body, ins):
                cur = self._in.setdefault(succ, {})
                changed = False
                for reg, ds in out.items():
                    merged = cur.get(reg, frozenset()) | ds
                    if merged != cur.get(reg):
                        cur[reg] = merged
                        changed = True
                if changed and succ not in queued:
                    queue.append(succ)
                    queued.add(succ)

    def defs_at(self, offset: int, reg: int) -> FrozenSet[int]:
        """Definitions of ``reg`` reaching the point just before the instruction at ``offset``."""
        return self._in.get(offset, {}).get(reg, frozenset())

    @cached_property
    def _uses(self) -> List[Tuple[Instruction, Tuple[int, ...]]]:
        return [(i, register_effects(i)[1]) for i in self.body.instructions if not i.is_payload]

    def uses_of(self, def_offset: int, reg: int) -> List[Instruction]:
        """Instructions that read ``reg`` while the definition at ``def_offset`` reaches them."""
        return [
            ins
            for ins, uses in self._uses
            if reg in uses and def_offset in self.defs_at(ins.offset, reg)
        ]

    def defining(self, d: int) -> Optional[Instruction]:
        return None if d < 0 else self.body.at(d)

    # ---- constants ---------------------------------------------------------------------
    def producer(self, d: int) -> Optional[Instruction]:
        """For a move-result definition, the call that produced the value."""
        ins = self.defining(d)
        if ins is None or not 0x0A <= ins.opcode <= 0x0C:
            return None
        for cand in sorted(self.defs_at(ins.offset, RESULT)):
            return self.defining(cand)
        return None

    def constant_values(self, offset: int, reg: int, depth: int = 8) -> Optional[List[ConstValue]]:
        """
        The constant values ``reg`` may hold before ``offset``, or None when any reaching
        definition is not a literal (parameters, call results, field reads, arithmetic).
        Moves are followed; every path must end at const or const-string.
        """
        values: List[ConstValue] = []
        if not self._collect(self.defs_at(offset, reg), values, depth, set()):
            return None
        return values or None

    def _collect(
        self, defs: FrozenSet[int], out: List[ConstValue], depth: int, seen: Set[int]
    ) -> bool:
        if not defs or depth < 0:
            return False
        for d in sorted(defs):
            if d in seen:
                continue
            seen.add(d)
            ins = self.defining(d)
            if ins is None:
                return False
            op = ins.opcode
            if op in (0x1A, 0x1B) and ins.string is not None:
                if ins.string not in out:
                    out.append(ins.string)
            elif 0x12 <= op <= 0x19 and ins.literal is not None:
                if ins.literal not in out:
                    out.append(ins.literal)
            elif 0x01 <= op <= 0x09:
                if not self._collect(self.defs_at(d, ins.registers[1]), out, depth - 1, seen):
                    return False
            else:
                return False
        return True

    def is_constant(self, offset: int, reg: int) -> bool:
        return self.constant_values(offset, reg) is not None

    def constant_derived(self, offset: int, reg: int, depth: int = 8) -> bool:
        """
        True when every value ``reg`` may hold before ``offset`` is built from literals only:
        const/const-string, constant-filled arrays (fill-array-data or filled-new-array of
        constants) and conversions such as ``String.getBytes()`` applied to such values.
        """
        return self._derived(self.defs_at(offset, reg), depth, set())

    def _derived(self, defs: FrozenSet[int], depth: int, seen: Set[int]) -> bool:
        if not defs or depth < 0:
            return False
        for d in defs:
            if d in seen:
                continue
            seen.add(d)
            if not self._derived_one(d, depth, seen):
                return False
        return True

    def _derived_one(self, d: int, depth: int, seen: Set[int]) -> bool:
        ins = self.defining(d)
        if ins is None:
            return False
        op = ins.opcode
        if op in (0x1A, 0x1B) or 0x12 <= op <= 0x19:
            return True
        if 0x01 <= op <= 0x09:
            return self._derived(self.defs_at(d, ins.registers[1]), depth - 1, seen)
        if op == 0x23:
            return any(
                f.opcode == 0x26 and d in self.defs_at(f.offset, f.registers[0])
                for f in self.body.instructions
            )
        producer = self.producer(d)
        if producer is None:
            return False
        if producer.opcode in (0x24, 0x25):
            return all(self.is_constant(producer.offset, r) for r in producer.registers)
        if producer.is_invoke and producer.method is not None:
            if producer.method.name not in CONST_CONVERSIONS or not producer.registers:
                return False
            first = argument_registers(producer)[0]
            return self._derived(self.defs_at(producer.offset, first), depth - 1, seen)
        return False

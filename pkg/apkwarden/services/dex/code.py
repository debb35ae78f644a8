# apkwarden/services/dex/code.py
from __future__ import annotations

import struct
from typing import List, Optional, Tuple

from apkwarden.domain.entities.dex import (
    ClassDef,
    DexFile,
    EncodedMethod,
    FillArrayDataPayload,
    IndexKind,
    Instruction,
    Invocation,
    MethodBody,
    MethodId,
    PackedSwitchPayload,
    Resolved,
    SparseSwitchPayload,
)
from apkwarden.domain.errors import ScanError
from apkwarden.services.dex.errors import (
    AbstractOrNative,
    IndexOutOfRange,
    MalformedCode,
    MethodNotFound,
)
from apkwarden.services.dex.opcodes import (
    FORMAT_WIDTH,
    INVOKE_OPCODES,
    OPCODES,
    PACKED_SWITCH_PAYLOAD,
    SPARSE_SWITCH_PAYLOAD,
    index_kind,
)
from apkwarden.services.dex.reader import ByteReader

_CODE_ITEM = struct.Struct("<HHHHII")


def _s(value: int, bits: int) -> int:
    """Sign-extend a ``bits``-wide value."""
    sign = 1 << (bits - 1)
    return (value & (sign - 1)) - (value & sign)


class _Decoder:
    def __init__(self, dex: DexFile, units: Tuple[int, ...], base: int):
        self.dex = dex
        self.u = units
        self.base = base  # file offset of insns[0], for error reporting

    def _unit(self, pc: int, k: int) -> int:
        if pc + k >= len(self.u):
            raise MalformedCode(
                f"instruction at 0x{2 * pc:x} runs past the end of the code",
                offset=self.base + 2 * pc,
            )
        return self.u[pc + k]

    def _resolve(self, kind: Optional[IndexKind], idx: int, pc: int) -> Resolved:
        table: Optional[tuple] = {
            IndexKind.string: self.dex.strings,
            IndexKind.type: self.dex.types,
            IndexKind.field: self.dex.fields,
            IndexKind.method: self.dex.methods,
            IndexKind.proto: self.dex.protos,
        }.get(kind) if kind else None
        if table is None:
            return None
        if idx >= len(table):
            raise IndexOutOfRange(
                f"{kind} index {idx} >= {len(table)} at code offset 0x{2 * pc:x}",
                offset=self.base + 2 * pc,
            )
        return table[idx]

    def payload(self, pc: int, ident: int) -> Instruction:
        off = 2 * pc
        if ident == PACKED_SWITCH_PAYLOAD:
            size = self._unit(pc, 1)
            width = size * 2 + 4
            self._unit(pc, width - 1)
            first_key = _s(self.u[pc + 2] | (self.u[pc + 3] << 16), 32)
            targets = tuple(
                _s(self.u[pc + 4 + 2 * i] | (self.u[pc + 5 + 2 * i] << 16), 32) for i in range(size)
            )
            payload = PackedSwitchPayload(first_key, targets)
            name = "packed-switch-payload"
        elif ident == SPARSE_SWITCH_PAYLOAD:
            size = self._unit(pc, 1)
            width = size * 4 + 2
            self._unit(pc, width - 1)
            words = [
                _s(self.u[pc + 2 + 2 * i] | (self.u[pc + 3 + 2 * i] << 16), 32)
                for i in range(2 * size)
            ]
            payload = SparseSwitchPayload(tuple(words[:size]), tuple(words[size:]))
            name = "sparse-switch-payload"
        else:
            element_width = self._unit(pc, 1)
            size = self._unit(pc, 2) | (self._unit(pc, 3) << 16)
            width = (size * element_width + 1) // 2 + 4
            self._unit(pc, width - 1)
            raw = struct.pack(f"<{width - 4}H", *self.u[pc + 4 : pc + width])
            payload = FillArrayDataPayload(element_width, size, raw[: size * element_width])
            name = "fill-array-data-payload"
        return Instruction(
            offset=off, opcode=0x00, mnemonic=name, fmt="payload", width=width, payload=payload
        )

    def one(self, pc: int) -> Instruction:
        w0 = self.u[pc]
        op = w0 & 0xFF
        hi = w0 >> 8
        if op == 0x00 and hi in (1, 2, 3):
            return self.payload(pc, w0)
        mnemonic, fmt = OPCODES[op]
        width = FORMAT_WIDTH[fmt]
        self._unit(pc, width - 1)
        u = self.u
        off = 2 * pc
        regs: Tuple[int, ...] = ()
        idx: Optional[int] = None
        lit: Optional[int] = None
        target: Optional[int] = None

        if fmt == "10x":
            pass
        elif fmt == "12x":
            regs = (hi & 0xF, hi >> 4)
        elif fmt == "11n":
            regs, lit = (hi & 0xF,), _s(hi >> 4, 4)
        elif fmt == "11x":
            regs = (hi,)
        elif fmt == "10t":
            target = off + 2 * _s(hi, 8)
        elif fmt == "20t":
            target = off + 2 * _s(u[pc + 1], 16)
        elif fmt == "22x":
            regs = (hi, u[pc + 1])
        elif fmt == "21t":
            regs, target = (hi,), off + 2 * _s(u[pc + 1], 16)
        elif fmt == "21s":
            regs, lit = (hi,), _s(u[pc + 1], 16)
        elif fmt == "21h":
            shift = 48 if mnemonic == "const-wide/high16" else 16
            regs, lit = (hi,), _s(u[pc + 1], 16) << shift
        elif fmt == "21c":
            regs, idx = (hi,), u[pc + 1]
        elif fmt == "23x":
            regs = (hi, u[pc + 1] & 0xFF, u[pc + 1] >> 8)
        elif fmt == "22b":
            regs, lit = (hi, u[pc + 1] & 0xFF), _s(u[pc + 1] >> 8, 8)
        elif fmt == "22t":
            regs, target = (hi & 0xF, hi >> 4), off + 2 * _s(u[pc + 1], 16)
        elif fmt == "22s":
            regs, lit = (hi & 0xF, hi >> 4), _s(u[pc + 1], 16)
        elif fmt == "22c":
            regs, idx = (hi & 0xF, hi >> 4), u[pc + 1]
        elif fmt == "30t":
            target = off + 2 * _s(u[pc + 1] | (u[pc + 2] << 16), 32)
        elif fmt == "32x":
            regs = (u[pc + 1], u[pc + 2])
        elif fmt == "31i":
            lit = _s(u[pc + 1] | (u[pc + 2] << 16), 32)
            regs = (hi,)
        elif fmt == "31t":
            regs, target = (hi,), off + 2 * _s(u[pc + 1] | (u[pc + 2] << 16), 32)
        elif fmt == "31c":
            regs, idx = (hi,), u[pc + 1] | (u[pc + 2] << 16)
        elif fmt in ("35c", "45cc"):
            count, g = hi >> 4, hi & 0xF
            if count > 5:
                raise MalformedCode(f"{mnemonic} with {count} registers", offset=self.base + off)
            packed = u[pc + 2]
            nibbles = (
                packed & 0xF,
                (packed >> 4) & 0xF,
                (packed >> 8) & 0xF,
                (packed >> 12) & 0xF,
                g,
            )
            regs = nibbles[:count]
            idx = u[pc + 1]
        elif fmt in ("3rc", "4rcc"):
            regs = tuple(range(u[pc + 2], u[pc + 2] + hi))
            idx = u[pc + 1]
        elif fmt == "51l":
            lit = _s(u[pc + 1] | (u[pc + 2] << 16) | (u[pc + 3] << 32) | (u[pc + 4] << 48), 64)
            regs = (hi,)

        kind = index_kind(op) if idx is not None else None
        return Instruction(
            offset=off,
            opcode=op,
            mnemonic=mnemonic,
            fmt=fmt,
            width=width,
            registers=regs,
            index=idx,
            index_kind=kind,
            ref=self._resolve(kind, idx, pc) if idx is not None else None,
            literal=lit,
            branch_target=target,
        )

    def all(self) -> Tuple[Instruction, ...]:
        out: List[Instruction] = []
        pc = 0
        while pc < len(self.u):
            ins = self.one(pc)
            out.append(ins)
            pc += ins.width
        boundaries = {i.offset for i in out}
        for ins in out:
            if ins.branch_target is not None and ins.branch_target not in boundaries:
                raise MalformedCode(
                    f"{ins.mnemonic} at 0x{ins.offset:x} targets 0x{ins.branch_target:x}, "
                    "which is not an instruction boundary",
                    offset=self.base + ins.offset,
                )
        return tuple(out)


def decode_code(dex: DexFile, method: EncodedMethod) -> MethodBody:
    """Decode the code item of one encoded method."""
    if not method.has_code:
        raise AbstractOrNative(f"{method.ref} has no code item", entry=dex.provenance)
    r = ByteReader(dex.data)
    try:
        regs, ins, outs, _tries, _debug, n_units = r.unpack("<HHHHII", method.code_off, "code_item")
        start = method.code_off + _CODE_ITEM.size
        r.require(start, 2 * n_units, "code_item insns")
        units = struct.unpack_from(f"<{n_units}H", dex.data, start)
        instructions = _Decoder(dex, units, start).all()
    except ScanError as e:
        raise e.located(dex.provenance)
    if ins > regs:
        raise MalformedCode(
            f"{method.ref}: ins_size {ins} > registers_size {regs}", entry=dex.provenance
        )
    return MethodBody(
        method=method.ref,
        registers_size=regs,
        ins_size=ins,
        outs_size=outs,
        instructions=instructions,
        is_static=method.is_static,
    )


def _find(dex: DexFile, class_name: str, method_name: str, proto: Optional[str]) -> EncodedMethod:
    cls: Optional[ClassDef] = dex.class_def(class_name)
    if cls is None:
        raise MethodNotFound(f"class {class_name} not defined", entry=dex.provenance)
    m = cls.find_method(method_name, proto)
    if m is None:
        raise MethodNotFound(f"{class_name}->{method_name} not defined", entry=dex.provenance)
    return m


def decode_method(
    dex: DexFile, class_name: str, method_name: str, proto: Optional[str] = None
) -> MethodBody:
    """
    Decode a named method. ``proto`` (``(I)V`` style) disambiguates overloads; without it
    the first definition in class order is used.
    """
    return decode_code(dex, _find(dex, class_name, method_name, proto))


def all_invocations(dex: DexFile) -> List[Invocation]:
    """One record per invoke instruction, in class order, then method order, then offset."""
    out: List[Invocation] = []
    for cls in dex.classes:
        for m in cls.methods:
            if not m.has_code:
                continue
            caller = MethodId.of(dex.provenance, m.ref)
            for ins in decode_code(dex, m).instructions:
                if ins.opcode in INVOKE_OPCODES and ins.method is not None:
                    out.append(Invocation(caller, ins.method, ins.offset, ins.opcode))
    return out


# apkwarden/services/dex/opcodes.py
"""Dalvik opcode table: every one of the 256 slots maps to (mnemonic, format)."""
from __future__ import annotations

from typing import Dict, Optional, Tuple

from apkwarden.domain.entities.dex import IndexKind

# width in 16-bit code units per instruction format
FORMAT_WIDTH: Dict[str, int] = {
    "10x": 1, "12x": 1, "11n": 1, "11x": 1, "10t": 1,
    "20t": 2, "22x": 2, "21t": 2, "21s": 2, "21h": 2, "21c": 2,
    "23x": 2, "22b": 2, "22t": 2, "22s": 2, "22c": 2,
    "30t": 3, "32x": 3, "31i": 3, "31t": 3, "31c": 3, "35c": 3, "3rc": 3,
    "45cc": 4, "4rcc": 4,
    "51l": 5,
}  # fmt: skip

OPCODES: Dict[int, Tuple[str, str]] = {}


def _put(first: int, fmt: str, *names: str) -> None:
    for i, name in enumerate(names):
        OPCODES[first + i] = (name, fmt)


_put(0x00, "10x", "nop")
_put(0x01, "12x", "move")
_put(0x02, "22x", "move/from16")
_put(0x03, "32x", "move/16")
_put(0x04, "12x", "move-wide")
_put(0x05, "22x", "move-wide/from16")
_put(0x06, "32x", "move-wide/16")
_put(0x07, "12x", "move-object")
_put(0x08, "22x", "move-object/from16")
_put(0x09, "32x", "move-object/16")
_put(0x0A, "11x", "move-result", "move-result-wide", "move-result-object", "move-exception")
_put(0x0E, "10x", "return-void")
_put(0x0F, "11x", "return", "return-wide", "return-object")
_put(0x12, "11n", "const/4")
_put(0x13, "21s", "const/16")
_put(0x14, "31i", "const")
_put(0x15, "21h", "const/high16")
_put(0x16, "21s", "const-wide/16")
_put(0x17, "31i", "const-wide/32")
_put(0x18, "51l", "const-wide")
_put(0x19, "21h", "const-wide/high16")
_put(0x1A, "21c", "const-string")
_put(0x1B, "31c", "const-string/jumbo")
_put(0x1C, "21c", "const-class")
_put(0x1D, "11x", "monitor-enter", "monitor-exit")
_put(0x1F, "21c", "check-cast")
_put(0x20, "22c", "instance-of")
_put(0x21, "12x", "array-length")
_put(0x22, "21c", "new-instance")
_put(0x23, "22c", "new-array")
_put(0x24, "35c", "filled-new-array")
_put(0x25, "3rc", "filled-new-array/range")
_put(0x26, "31t", "fill-array-data")
_put(0x27, "11x", "throw")
_put(0x28, "10t", "goto")
_put(0x29, "20t", "goto/16")
_put(0x2A, "30t", "goto/32")
_put(0x2B, "31t", "packed-switch", "sparse-switch")
_put(0x2D, "23x", "cmpl-float", "cmpg-float", "cmpl-double", "cmpg-double", "cmp-long")
_put(0x32, "22t", "if-eq", "if-ne", "if-lt", "if-ge", "if-gt", "if-le")
_put(0x38, "21t", "if-eqz", "if-nez", "if-ltz", "if-gez", "if-gtz", "if-lez")
_put(0x3E, "10x", *(f"unused-{op:02x}" for op in range(0x3E, 0x44)))

_SUFFIXES = ("", "-wide", "-object", "-boolean", "-byte", "-char", "-short")
_put(0x44, "23x", *(f"aget{s}" for s in _SUFFIXES), *(f"aput{s}" for s in _SUFFIXES))
_put(0x52, "22c", *(f"iget{s}" for s in _SUFFIXES), *(f"iput{s}" for s in _SUFFIXES))
_put(0x60, "21c", *(f"sget{s}" for s in _SUFFIXES), *(f"sput{s}" for s in _SUFFIXES))

_INVOKES = ("virtual", "super", "direct", "static", "interface")
_put(0x6E, "35c", *(f"invoke-{k}" for k in _INVOKES))
_put(0x73, "10x", "unused-73")
_put(0x74, "3rc", *(f"invoke-{k}/range" for k in _INVOKES))
_put(0x79, "10x", "unused-79", "unused-7a")

_put(
    0x7B, "12x",
    "neg-int", "not-int", "neg-long", "not-long", "neg-float", "neg-double",
    "int-to-long", "int-to-float", "int-to-double", "long-to-int", "long-to-float",
    "long-to-double", "float-to-int", "float-to-long", "float-to-double", "double-to-int",
    "double-to-long", "double-to-float", "int-to-byte", "int-to-char", "int-to-short",
)  # fmt: skip

_INT_OPS = ("add", "sub", "mul", "div", "rem", "and", "or", "xor", "shl", "shr", "ushr")
_FLOAT_OPS = ("add", "sub", "mul", "div", "rem")
_BINOPS = (
    [f"{o}-int" for o in _INT_OPS]
    + [f"{o}-long" for o in _INT_OPS]
    + [f"{o}-float" for o in _FLOAT_OPS]
    + [f"{o}-double" for o in _FLOAT_OPS]
)
_put(0x90, "23x", *_BINOPS)
_put(0xB0, "12x", *(f"{b}/2addr" for b in _BINOPS))
_put(
    0xD0, "22s",
    "add-int/lit16", "rsub-int", "mul-int/lit16", "div-int/lit16",
    "rem-int/lit16", "and-int/lit16", "or-int/lit16", "xor-int/lit16",
)  # fmt: skip
_put(
    0xD8, "22b",
    "add-int/lit8", "rsub-int/lit8", "mul-int/lit8", "div-int/lit8", "rem-int/lit8",
    "and-int/lit8", "or-int/lit8", "xor-int/lit8", "shl-int/lit8", "shr-int/lit8",
    "ushr-int/lit8",
)  # fmt: skip
_put(0xE3, "10x", *(f"unused-{op:02x}" for op in range(0xE3, 0xFA)))
_put(0xFA, "45cc", "invoke-polymorphic")
_put(0xFB, "4rcc", "invoke-polymorphic/range")
_put(0xFC, "35c", "invoke-custom")
_put(0xFD, "3rc", "invoke-custom/range")
_put(0xFE, "21c", "const-method-handle")
_put(0xFF, "21c", "const-method-type")

assert len(OPCODES) == 256

# payload pseudo-instruction identifiers (nop opcode with a non-zero high byte)
PACKED_SWITCH_PAYLOAD = 0x0100
SPARSE_SWITCH_PAYLOAD = 0x0200
FILL_ARRAY_DATA_PAYLOAD = 0x0300

INVOKE_OPCODES = frozenset(range(0x6E, 0x73)) | frozenset(range(0x74, 0x79))
STATIC_INVOKES = frozenset({0x71, 0x77})


def index_kind(opcode: int) -> Optional[IndexKind]:
    name, fmt = OPCODES[opcode]
    if fmt in ("21c", "31c", "22c", "35c", "3rc", "45cc", "4rcc"):
        if name.startswith("const-string"):
            return IndexKind.string
        if name in ("const-class", "check-cast", "new-instance", "instance-of", "new-array"):
            return IndexKind.type
        if name.startswith("filled-new-array"):
            return IndexKind.type
        if name[1:4] in ("get", "put"):
            return IndexKind.field
        if name.startswith("invoke-custom"):
            return IndexKind.call_site
        if name.startswith("invoke"):
            return IndexKind.method
        if name == "const-method-handle":
            return IndexKind.method_handle
        if name == "const-method-type":
            return IndexKind.proto
    return None


def invoke_kind_name(opcode: int) -> str:
    """'virtual', 'super', 'direct', 'static' or 'interface' for invoke opcodes."""
    return OPCODES[opcode][0].split("-", 1)[1].split("/", 1)[0]

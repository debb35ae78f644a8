# apkwarden/domain/entities/dex.py
from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum
from functools import total_ordering
from typing import Dict, Optional, Tuple, Union

from apkwarden.domain.entities.warnings import ScanWarning

ACC_PUBLIC = 0x1
ACC_PRIVATE = 0x2
ACC_STATIC = 0x8
ACC_FINAL = 0x10
ACC_INTERFACE = 0x200
ACC_ABSTRACT = 0x400
ACC_NATIVE = 0x100
ACC_CONSTRUCTOR = 0x10000


@dataclass(frozen=True)
class Prototype:
    shorty: str
    return_type: str
    parameters: Tuple[str, ...] = ()

    @property
    def descriptor(self) -> str:
        return "(" + "".join(self.parameters) + ")" + self.return_type


@dataclass(frozen=True)
class MethodRef:
    class_descriptor: str
    name: str
    prototype: Prototype

    @property
    def signature(self) -> str:
        return self.name + self.prototype.descriptor

    def __str__(self) -> str:
        return f"{self.class_descriptor}->{self.name}{self.prototype.descriptor}"


@dataclass(frozen=True)
class FieldRef:
    class_descriptor: str
    name: str
    type_descriptor: str

    def __str__(self) -> str:
        return f"{self.class_descriptor}->{self.name}:{self.type_descriptor}"


@total_ordering
@dataclass(frozen=True)
class MethodId:
    """
    Program-wide method identity. ``provenance`` is the DEX entry that defines the method,
    or None for methods outside the program (framework/library boundary).
    """

    provenance: Optional[str]
    class_descriptor: str
    name: str
    proto: str

    @classmethod
    def of(cls, provenance: Optional[str], ref: MethodRef) -> "MethodId":
        return cls(provenance, ref.class_descriptor, ref.name, ref.prototype.descriptor)

    @property
    def is_boundary(self) -> bool:
        return self.provenance is None

    def sort_key(self) -> Tuple[str, str, str, str]:
        return (self.provenance or "", self.class_descriptor, self.name, self.proto)

    def __lt__(self, other: "MethodId") -> bool:
        return self.sort_key() < other.sort_key()

    @property
    def signature(self) -> str:
        return self.name + self.proto

    def __str__(self) -> str:
        return f"{self.class_descriptor}->{self.name}{self.proto}"


@dataclass(frozen=True)
class EncodedField:
    ref: FieldRef
    access_flags: int

    @property
    def is_static(self) -> bool:
        return bool(self.access_flags & ACC_STATIC)


@dataclass(frozen=True)
class EncodedMethod:
    ref: MethodRef
    access_flags: int
    code_off: int

    @property
    def is_static(self) -> bool:
        return bool(self.access_flags & ACC_STATIC)

    @property
    def has_code(self) -> bool:
        return self.code_off != 0 and not self.access_flags & (ACC_ABSTRACT | ACC_NATIVE)


@dataclass(frozen=True)
class ClassDef:
    descriptor: str
    access_flags: int
    superclass: Optional[str]
    interfaces: Tuple[str, ...] = ()
    source_file: Optional[str] = None
    static_fields: Tuple[EncodedField, ...] = ()
    instance_fields: Tuple[EncodedField, ...] = ()
    direct_methods: Tuple[EncodedMethod, ...] = ()
    virtual_methods: Tuple[EncodedMethod, ...] = ()
    static_values: Tuple[object, ...] = ()

    @property
    def methods(self) -> Tuple[EncodedMethod, ...]:
        return self.direct_methods + self.virtual_methods

    @property
    def fields(self) -> Tuple[EncodedField, ...]:
        return self.static_fields + self.instance_fields

    @property
    def is_interface(self) -> bool:
        return bool(self.access_flags & ACC_INTERFACE)

    def find_method(self, name: str, proto: Optional[str] = None) -> Optional[EncodedMethod]:
        for m in self.methods:
            if m.ref.name == name and (proto is None or m.ref.prototype.descriptor == proto):
                return m
        return None

    def static_initial_values(self) -> Dict[str, object]:
        """Field name -> initial value for static fields with an encoded initializer."""
        return {f.ref.name: v for f, v in zip(self.static_fields, self.static_values)}


@dataclass(frozen=True)
class DexFile:
    provenance: str
    version: str
    strings: Tuple[str, ...]
    types: Tuple[str, ...]
    protos: Tuple[Prototype, ...]
    fields: Tuple[FieldRef, ...]
    methods: Tuple[MethodRef, ...]
    classes: Tuple[ClassDef, ...]
    data: bytes = field(repr=False, compare=False, default=b"")
    warnings: Tuple[ScanWarning, ...] = ()

    def class_def(self, descriptor: str) -> Optional[ClassDef]:
        for c in self.classes:
            if c.descriptor == descriptor:
                return c
        return None

    @property
    def class_descriptors(self) -> Tuple[str, ...]:
        return tuple(c.descriptor for c in self.classes)


class IndexKind(StrEnum):
    string = "string"
    type = "type"
    field = "field"
    method = "method"
    proto = "proto"
    call_site = "call_site"
    method_handle = "method_handle"


@dataclass(frozen=True)
class PackedSwitchPayload:
    first_key: int
    targets: Tuple[int, ...]


@dataclass(frozen=True)
class SparseSwitchPayload:
    keys: Tuple[int, ...]
    targets: Tuple[int, ...]


@dataclass(frozen=True)
class FillArrayDataPayload:
    element_width: int
    size: int
    data: bytes = field(repr=False)


Payload = Union[PackedSwitchPayload, SparseSwitchPayload, FillArrayDataPayload]
Resolved = Union[MethodRef, FieldRef, Prototype, str, None]


@dataclass(frozen=True)
class Instruction:
    """
    One decoded instruction. ``offset`` is in bytes from the start of the method's code;
    ``width`` is in 16-bit code units. Branch targets are absolute byte offsets.
    """

    offset: int
    opcode: int
    mnemonic: str
    fmt: str
    width: int
    registers: Tuple[int, ...] = ()
    index: Optional[int] = None
    index_kind: Optional[IndexKind] = None
    ref: Resolved = None
    literal: Optional[int] = None
    branch_target: Optional[int] = None
    payload: Optional[Payload] = None

    @property
    def method(self) -> Optional[MethodRef]:
        return self.ref if isinstance(self.ref, MethodRef) else None

    @property
    def field(self) -> Optional[FieldRef]:
        return self.ref if isinstance(self.ref, FieldRef) else None

    @property
    def string(self) -> Optional[str]:
        if self.index_kind != IndexKind.string:
            return None
        return self.ref  # type: ignore[return-value]

    @property
    def type_descriptor(self) -> Optional[str]:
        return self.ref if self.index_kind == IndexKind.type else None  # type: ignore[return-value]

    @property
    def is_invoke(self) -> bool:
        return 0x6E <= self.opcode <= 0x72 or 0x74 <= self.opcode <= 0x78

    @property
    def is_payload(self) -> bool:
        return self.payload is not None

    @property
    def next_offset(self) -> int:
        return self.offset + 2 * self.width


@dataclass(frozen=True)
class MethodBody:
    method: MethodRef
    registers_size: int
    ins_size: int
    outs_size: int
    instructions: Tuple[Instruction, ...]
    is_static: bool = False

    def at(self, offset: int) -> Instruction:
        return self._index()[offset]

    def _index(self) -> Dict[int, Instruction]:
        idx = self.__dict__.get("_by_offset")
        if idx is None:
            idx = {ins.offset: ins for ins in self.instructions}
            object.__setattr__(self, "_by_offset", idx)
        return idx

    def has_offset(self, offset: int) -> bool:
        return offset in self._index()

    @property
    def code_units(self) -> int:
        return sum(i.width for i in self.instructions)

    @property
    def first_param_register(self) -> int:
        return self.registers_size - self.ins_size


@dataclass(frozen=True, order=True)
class Invocation:
    caller: MethodId
    callee: MethodRef = field(compare=False)
    site: int = 0
    opcode: int = field(default=0, compare=False)

# apkwarden/services/dex/parser.py
from __future__ import annotations

from typing import List, Sequence, Tuple

from apkwarden.domain.entities.dex import (
    ClassDef,
    DexFile,
    EncodedField,
    EncodedMethod,
    FieldRef,
    MethodRef,
    Prototype,
)
from apkwarden.domain.entities.warnings import ScanWarning
from apkwarden.domain.errors import ScanError
from apkwarden.services.dex.errors import BadMagic, IndexOutOfRange, UnsupportedVersion
from apkwarden.services.dex.reader import ByteReader, decode_mutf8, utf16_sort_key

DEX_MAGIC = b"dex\n"
SUPPORTED_VERSIONS = frozenset({"035", "037", "038", "039"})
HEADER_SIZE = 0x70
ENDIAN_CONSTANT = 0x12345678
NO_INDEX = 0xFFFFFFFF

# encoded_value types
_VALUE_BYTE = 0x00
_VALUE_SHORT = 0x02
_VALUE_CHAR = 0x03
_VALUE_INT = 0x04
_VALUE_LONG = 0x06
_VALUE_FLOAT = 0x10
_VALUE_DOUBLE = 0x11
_VALUE_STRING = 0x17
_VALUE_TYPE = 0x18
_VALUE_ARRAY = 0x1C
_VALUE_ANNOTATION = 0x1D
_VALUE_NULL = 0x1E
_VALUE_BOOLEAN = 0x1F


class _Header:
    __slots__ = (
        "version", "file_size", "string_ids", "type_ids", "proto_ids",
        "field_ids", "method_ids", "class_defs",
    )  # fmt: skip

    def __init__(self, r: ByteReader):
        if r.size < 8 or r.data[:4] != DEX_MAGIC or r.data[7] != 0:
            raise BadMagic("not a DEX file (bad magic)", offset=0)
        version = r.data[4:7].decode("ascii", "replace")
        if version not in SUPPORTED_VERSIONS:
            raise UnsupportedVersion(f"unsupported DEX version {version!r}", offset=4)
        fields = r.unpack("<8sI20s20I", 0, "DEX header")
        (
            self.file_size, _header_size, endian, _link_size, _link_off, _map_off,
            n_str, o_str, n_type, o_type, n_proto, o_proto,
            n_field, o_field, n_method, o_method, n_class, o_class, _data_size, _data_off,
        ) = fields[3:]  # fmt: skip
        if endian != ENDIAN_CONSTANT:
            raise BadMagic(f"unsupported endian tag 0x{endian:08x}", offset=0x28)
        self.version = version
        self.string_ids = (n_str, o_str)
        self.type_ids = (n_type, o_type)
        self.proto_ids = (n_proto, o_proto)
        self.field_ids = (n_field, o_field)
        self.method_ids = (n_method, o_method)
        self.class_defs = (n_class, o_class)


def _section(r: ByteReader, table: Tuple[int, int], item: int, what: str) -> Tuple[int, int]:
    count, off = table
    if count:
        r.require(off, count * item, what)
    return count, off


def _check(idx: int, size: int, what: str, offset: int) -> int:
    if idx >= size:
        raise IndexOutOfRange(f"{what} index {idx} >= {size}", offset=offset)
    return idx


class _DexParser:
    def __init__(self, data: bytes, provenance: str):
        self.r = ByteReader(data)
        self.provenance = provenance
        self.h = _Header(self.r)
        self.warnings: List[ScanWarning] = []

    # ---- id tables ---------------------------------------------------------------------
    def strings(self) -> Tuple[str, ...]:
        count, off = _section(self.r, self.h.string_ids, 4, "string_ids")
        out: List[str] = []
        for i in range(count):
            data_off = self.r.u32(off + 4 * i, "string_id_item")
            _utf16_len, pos = self.r.uleb128(data_off, "string_data_item")
            end = self.r.data.find(b"\x00", pos)
            if end < 0:
                self.r.require(pos, self.r.size - pos + 1, "string_data_item")
            text, repaired = decode_mutf8(self.r.data[pos:end])
            if repaired:
                self.warnings.append(
                    ScanWarning(
                        "mutf8-repaired",
                        f"string #{i} had invalid MUTF-8 and was repaired",
                        f"{self.provenance}@0x{data_off:x}",
                    )
                )
            out.append(text)
        for i in range(1, len(out)):
            if utf16_sort_key(out[i - 1]) >= utf16_sort_key(out[i]):
                self.warnings.append(
                    ScanWarning(
                        "string-pool-unsorted",
                        f"string pool not sorted at index {i}",
                        self.provenance,
                    )
                )
                break
        return tuple(out)

    def types(self, strings: Sequence[str]) -> Tuple[str, ...]:
        count, off = _section(self.r, self.h.type_ids, 4, "type_ids")
        return tuple(
            strings[
                _check(self.r.u32(off + 4 * i), len(strings), "type descriptor string", off + 4 * i)
            ]
            for i in range(count)
        )

    def type_list(self, off: int, types: Sequence[str]) -> Tuple[str, ...]:
        if off == 0:
            return ()
        size = self.r.u32(off, "type_list")
        self.r.require(off + 4, 2 * size, "type_list")
        return tuple(
            types[_check(self.r.u16(off + 4 + 2 * i), len(types), "type", off + 4 + 2 * i)]
            for i in range(size)
        )

    def protos(self, strings: Sequence[str], types: Sequence[str]) -> Tuple[Prototype, ...]:
        count, off = _section(self.r, self.h.proto_ids, 12, "proto_ids")
        out = []
        for i in range(count):
            at = off + 12 * i
            shorty, ret, params_off = self.r.unpack("<III", at, "proto_id_item")
            out.append(
                Prototype(
                    shorty=strings[_check(shorty, len(strings), "shorty string", at)],
                    return_type=types[_check(ret, len(types), "return type", at)],
                    parameters=self.type_list(params_off, types),
                )
            )
        return tuple(out)

    def fields(self, strings: Sequence[str], types: Sequence[str]) -> Tuple[FieldRef, ...]:
        count, off = _section(self.r, self.h.field_ids, 8, "field_ids")
        out = []
        for i in range(count):
            at = off + 8 * i
            cls, typ, name = self.r.unpack("<HHI", at, "field_id_item")
            out.append(
                FieldRef(
                    class_descriptor=types[_check(cls, len(types), "field class", at)],
                    name=strings[_check(name, len(strings), "field name", at)],
                    type_descriptor=types[_check(typ, len(types), "field type", at)],
                )
            )
        return tuple(out)

    def methods(
        self, strings: Sequence[str], types: Sequence[str], protos: Sequence[Prototype]
    ) -> Tuple[MethodRef, ...]:
        count, off = _section(self.r, self.h.method_ids, 8, "method_ids")
        out = []
        for i in range(count):
            at = off + 8 * i
            cls, proto, name = self.r.unpack("<HHI", at, "method_id_item")
            out.append(
                MethodRef(
                    class_descriptor=types[_check(cls, len(types), "method class", at)],
                    name=strings[_check(name, len(strings), "method name", at)],
                    prototype=protos[_check(proto, len(protos), "method proto", at)],
                )
            )
        return tuple(out)

    # ---- class defs --------------------------------------------------------------------
    def encoded_value(self, pos: int, strings, types, fields, methods) -> Tuple[object, int]:
        self.r.require(pos, 1, "encoded_value")
        head = self.r.data[pos]
        vtype, arg = head & 0x1F, head >> 5
        pos += 1
        if vtype == _VALUE_NULL:
            return None, pos
        if vtype == _VALUE_BOOLEAN:
            return bool(arg), pos
        if vtype == _VALUE_ARRAY:
            return self.encoded_array(pos, strings, types, fields, methods)
        if vtype == _VALUE_ANNOTATION:
            _type_idx, pos = self.r.uleb128(pos)
            size, pos = self.r.uleb128(pos)
            for _ in range(size):
                _name, pos = self.r.uleb128(pos)
                _value, pos = self.encoded_value(pos, strings, types, fields, methods)
            return None, pos
        width = arg + 1
        self.r.require(pos, width, "encoded_value payload")
        raw = self.r.data[pos : pos + width]
        pos += width
        if vtype in (_VALUE_BYTE, _VALUE_SHORT, _VALUE_INT, _VALUE_LONG):
            return int.from_bytes(raw, "little", signed=True), pos
        if vtype == _VALUE_CHAR:
            return int.from_bytes(raw, "little"), pos
        idx = int.from_bytes(raw, "little")
        if vtype == _VALUE_STRING:
            return strings[_check(idx, len(strings), "encoded string", pos - width)], pos
        if vtype == _VALUE_TYPE:
            return types[_check(idx, len(types), "encoded type", pos - width)], pos
        # floats, doubles, method/field/enum/handle references: kept as raw payload
        return raw, pos

    def encoded_array(self, pos: int, strings, types, fields, methods) -> Tuple[tuple, int]:
        size, pos = self.r.uleb128(pos, "encoded_array")
        values = []
        for _ in range(size):
            v, pos = self.encoded_value(pos, strings, types, fields, methods)
            values.append(v)
        return tuple(values), pos

    def class_data(
        self, off: int, fields: Sequence[FieldRef], methods: Sequence[MethodRef]
    ) -> Tuple[tuple, tuple, tuple, tuple]:
        if off == 0:
            return (), (), (), ()
        pos = off
        sizes = []
        for _ in range(4):
            n, pos = self.r.uleb128(pos, "class_data_item")
            sizes.append(n)

        def _fields(n: int) -> Tuple[EncodedField, ...]:
            nonlocal pos
            idx, out = 0, []
            for _ in range(n):
                diff, pos = self.r.uleb128(pos, "encoded_field")
                flags, pos = self.r.uleb128(pos, "encoded_field")
                idx += diff
                out.append(EncodedField(fields[_check(idx, len(fields), "field", pos)], flags))
            return tuple(out)

        def _methods(n: int) -> Tuple[EncodedMethod, ...]:
            nonlocal pos
            idx, out = 0, []
            for _ in range(n):
                diff, pos = self.r.uleb128(pos, "encoded_method")
                flags, pos = self.r.uleb128(pos, "encoded_method")
                code_off, pos = self.r.uleb128(pos, "encoded_method")
                idx += diff
                ref = methods[_check(idx, len(methods), "method", pos)]
                out.append(EncodedMethod(ref, flags, code_off))
            return tuple(out)

        static_fields = _fields(sizes[0])
        instance_fields = _fields(sizes[1])
        direct = _methods(sizes[2])
        virtual = _methods(sizes[3])
        return static_fields, instance_fields, direct, virtual

    def classes(self, strings, types, fields, methods) -> Tuple[ClassDef, ...]:
        count, off = _section(self.r, self.h.class_defs, 32, "class_defs")
        out = []
        for i in range(count):
            at = off + 32 * i
            (cls, flags, sup, ifaces_off, src, _annotations, data_off, values_off) = self.r.unpack(
                "<8I", at, "class_def_item"
            )
            sf, inf, direct, virtual = self.class_data(data_off, fields, methods)
            static_values: tuple = ()
            if values_off:
                static_values, _ = self.encoded_array(values_off, strings, types, fields, methods)
            out.append(
                ClassDef(
                    descriptor=types[_check(cls, len(types), "class", at)],
                    access_flags=flags,
                    superclass=(
                        None
                        if sup == NO_INDEX
                        else types[_check(sup, len(types), "superclass", at)]
                    ),
                    interfaces=self.type_list(ifaces_off, types),
                    source_file=(
                        None
                        if src == NO_INDEX
                        else strings[_check(src, len(strings), "source file", at)]
                    ),
                    static_fields=sf,
                    instance_fields=inf,
                    direct_methods=direct,
                    virtual_methods=virtual,
                    static_values=static_values,
                )
            )
        return tuple(out)

    def parse(self) -> DexFile:
        strings = self.strings()
        types = self.types(strings)
        protos = self.protos(strings, types)
        fields = self.fields(strings, types)
        methods = self.methods(strings, types, protos)
        classes = self.classes(strings, types, fields, methods)
        return DexFile(
            provenance=self.provenance,
            version=self.h.version,
            strings=strings,
            types=types,
            protos=protos,
            fields=fields,
            methods=methods,
            classes=classes,
            data=self.r.data,
            warnings=tuple(self.warnings),
        )


def parse_dex(data: bytes, provenance: str = "classes.dex") -> DexFile:
    """
    Materialize every id table and class definition of a DEX image. Method code is decoded
    on demand (see ``decode_method``).

    Raises BadMagic, UnsupportedVersion, TruncatedSection or IndexOutOfRange with the entry
    name and byte offset attached.
    """
    try:
        return _DexParser(data, provenance).parse()
    except ScanError as e:
        raise e.located(provenance)


def resource_id_names(dexes: Sequence[DexFile]) -> dict[int, str]:
    """Map compiled ``R.id`` values to names using the static initializers of ``R$id``."""
    out: dict[int, str] = {}
    for dex in dexes:
        for cls in dex.classes:
            if not cls.descriptor.endswith("/R$id;"):
                continue
            for name, value in cls.static_initial_values().items():
                if isinstance(value, int) and not isinstance(value, bool):
                    out.setdefault(value & 0xFFFFFFFF, name)
    return out


# apkwarden/domain/entities/xml.py
from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Optional, Tuple, Union


class ValueType(IntEnum):
    NULL = 0x00
    REFERENCE = 0x01
    ATTRIBUTE = 0x02
    STRING = 0x03
    FLOAT = 0x04
    DIMENSION = 0x05
    FRACTION = 0x06
    INT_DEC = 0x10
    INT_HEX = 0x11
    INT_BOOLEAN = 0x12
    INT_COLOR_ARGB8 = 0x1C
    INT_COLOR_RGB8 = 0x1D
    INT_COLOR_ARGB4 = 0x1E
    INT_COLOR_RGB4 = 0x1F


@dataclass(frozen=True)
class ResourceRef:
    """Compiled ``@type/name`` reference; only the numeric id survives compilation."""

    res_id: int

    def __str__(self) -> str:
        return f"@0x{self.res_id:08x}"


AttrValue = Union[str, int, bool, ResourceRef, None]


@dataclass(frozen=True)
class TypedValue:
    type: int
    data: int
    string: Optional[str] = None

    @property
    def value(self) -> AttrValue:
        t = self.type
        if t == ValueType.STRING:
            return self.string
        if t == ValueType.REFERENCE:
            return ResourceRef(self.data)
        if t == ValueType.INT_BOOLEAN:
            return self.data != 0
        if t == ValueType.INT_DEC:
            return self.data - (1 << 32) if self.data & 0x80000000 else self.data
        if t == ValueType.NULL:
            return None
        # hex ints, colors, dimensions, floats: keep the raw 32-bit payload
        return self.data


@dataclass(frozen=True)
class XmlAttribute:
    namespace: Optional[str]
    name: str
    typed: TypedValue
    resource_id: Optional[int] = None

    @property
    def value(self) -> AttrValue:
        return self.typed.value


@dataclass(frozen=True)
class XmlElement:
    name: str
    namespace: Optional[str] = None
    attributes: Tuple[XmlAttribute, ...] = ()
    children: Tuple["XmlElement", ...] = ()

    def attribute(self, name: str, res_id: Optional[int] = None) -> Optional[XmlAttribute]:
        """Lookup by resource id first, falling back to the local attribute name."""
        if res_id is not None:
            for a in self.attributes:
                if a.resource_id == res_id:
                    return a
        for a in self.attributes:
            if a.name == name:
                return a
        return None

    def get(self, name: str, res_id: Optional[int] = None) -> AttrValue:
        a = self.attribute(name, res_id)
        return a.value if a is not None else None

    def find_all(self, name: str) -> list["XmlElement"]:
        return [c for c in self.children if c.name == name]

    def iter(self):
        yield self
        for c in self.children:
            yield from c.iter()


@dataclass(frozen=True)
class XmlDocument:
    string_pool: Tuple[str, ...]
    resource_ids: Tuple[int, ...]
    root: XmlElement

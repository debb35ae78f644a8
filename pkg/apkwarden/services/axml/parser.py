# apkwarden/services/axml/parser.py
from __future__ import annotations

import struct
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from apkwarden.domain.entities.xml import (
    TypedValue,
    ValueType,
    XmlAttribute,
    XmlDocument,
    XmlElement,
)
from apkwarden.services.axml.constants import (
    NO_INDEX,
    RES_STRING_POOL_TYPE,
    RES_XML_CDATA_TYPE,
    RES_XML_END_ELEMENT_TYPE,
    RES_XML_END_NAMESPACE_TYPE,
    RES_XML_RESOURCE_MAP_TYPE,
    RES_XML_START_ELEMENT_TYPE,
    RES_XML_START_NAMESPACE_TYPE,
    RES_XML_TYPE,
)
from apkwarden.services.axml.errors import (
    BadMagic,
    StringIndexOutOfRange,
    TruncatedChunk,
    UnbalancedElements,
)
from apkwarden.services.axml.string_pool import read_string_pool

_CHUNK = struct.Struct("<HHI")
# node header (line number, comment) follows the chunk header in every XML node chunk
_NODE_EXT = 16
_START_ELEMENT = struct.Struct("<IIHHHHHH")
_ATTRIBUTE = struct.Struct("<IIIHBBI")
_SKIPPED_CHUNKS = (RES_XML_START_NAMESPACE_TYPE, RES_XML_END_NAMESPACE_TYPE, RES_XML_CDATA_TYPE)


@dataclass
class _OpenElement:
    name: str
    namespace: Optional[str]
    attributes: Tuple[XmlAttribute, ...]
    offset: int
    children: List[XmlElement] = field(default_factory=list)

    def close(self) -> XmlElement:
        return XmlElement(self.name, self.namespace, self.attributes, tuple(self.children))


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.strings: Tuple[str, ...] = ()
        self.resource_ids: Tuple[int, ...] = ()

    def string(self, idx: int, offset: int) -> str:
        if idx >= len(self.strings):
            raise StringIndexOutOfRange(
                f"string index {idx} >= pool size {len(self.strings)}", offset=offset
            )
        return self.strings[idx]

    def optional_string(self, idx: int, offset: int) -> Optional[str]:
        return None if idx == NO_INDEX else self.string(idx, offset)

    def chunk_header(self, pos: int, limit: int) -> Tuple[int, int, int]:
        if pos + _CHUNK.size > limit:
            raise TruncatedChunk("chunk header runs past the buffer", offset=pos)
        ctype, hsize, size = _CHUNK.unpack_from(self.data, pos)
        if size < _CHUNK.size or hsize < _CHUNK.size or hsize > size or pos + size > limit:
            raise TruncatedChunk(
                f"chunk 0x{ctype:04x} size {size} exceeds the remaining {limit - pos} bytes",
                offset=pos,
            )
        return ctype, hsize, size

    def attributes(self, pos: int, start: int, count: int, stride: int) -> Tuple[XmlAttribute, ...]:
        out: List[XmlAttribute] = []
        seen = set()
        for i in range(count):
            at = pos + start + i * stride
            try:
                ns_idx, name_idx, raw_idx, _vsize, _res0, vtype, vdata = _ATTRIBUTE.unpack_from(
                    self.data, at
                )
            except struct.error as e:
                raise TruncatedChunk("attribute runs past the buffer", offset=at) from e
            namespace = self.optional_string(ns_idx, at)
            name = self.string(name_idx, at)
            res_id = self.resource_ids[name_idx] if name_idx < len(self.resource_ids) else None
            raw = self.optional_string(raw_idx, at)
            if vtype == ValueType.STRING:
                string = self.string(vdata, at) if raw is None else raw
            else:
                string = raw
            key = (namespace, name)
            if key in seen:
                continue
            seen.add(key)
            out.append(XmlAttribute(namespace, name, TypedValue(vtype, vdata, string), res_id))
        return tuple(out)


def parse_axml(data: bytes) -> XmlDocument:
    """
    Parse a compiled Android XML document (manifest or layout) into an immutable tree.

    Raises BadMagic, TruncatedChunk, StringIndexOutOfRange or UnbalancedElements; every error
    carries the byte offset of the offending chunk.
    """
    if len(data) < _CHUNK.size:
        raise BadMagic("buffer too short for an AXML header", offset=0)
    ctype, hsize, total = _CHUNK.unpack_from(data, 0)
    if ctype != RES_XML_TYPE:
        raise BadMagic(f"expected RES_XML_TYPE chunk, found 0x{ctype:04x}", offset=0)
    if total > len(data) or total < hsize:
        raise TruncatedChunk(f"document size {total} exceeds buffer of {len(data)}", offset=0)

    r = _Reader(data)
    stack: List[_OpenElement] = []
    roots: List[XmlElement] = []
    pos = hsize
    while pos < total:
        ctype, chsize, size = r.chunk_header(pos, total)
        if ctype == RES_STRING_POOL_TYPE:
            r.strings = read_string_pool(data, pos, chsize, size)
        elif ctype == RES_XML_RESOURCE_MAP_TYPE:
            n = (size - chsize) // 4
            r.resource_ids = struct.unpack_from(f"<{n}I", data, pos + chsize)
        elif ctype == RES_XML_START_ELEMENT_TYPE:
            ext = pos + _NODE_EXT
            try:
                (ns_idx, name_idx, attr_start, attr_size, attr_count, *_) = (
                    _START_ELEMENT.unpack_from(data, ext)
                )
            except struct.error as e:
                raise TruncatedChunk("start element runs past the buffer", offset=pos) from e
            if ext + attr_start + attr_count * attr_size > pos + size:
                raise TruncatedChunk("attributes run past the element chunk", offset=pos)
            stack.append(
                _OpenElement(
                    name=r.string(name_idx, pos),
                    namespace=r.optional_string(ns_idx, pos),
                    attributes=r.attributes(ext, attr_start, attr_count, attr_size or 20),
                    offset=pos,
                )
            )
        elif ctype == RES_XML_END_ELEMENT_TYPE:
            try:
                _ns_idx, name_idx = struct.unpack_from("<II", data, pos + _NODE_EXT)
            except struct.error as e:
                raise TruncatedChunk("end element runs past the buffer", offset=pos) from e
            name = r.string(name_idx, pos)
            if not stack or stack[-1].name != name:
                expected = stack[-1].name if stack else "nothing"
                raise UnbalancedElements(f"end of <{name}> while {expected} is open", offset=pos)
            done = stack.pop().close()
            if stack:
                stack[-1].children.append(done)
            else:
                roots.append(done)
        elif ctype in _SKIPPED_CHUNKS:
            pass
        # unknown chunk types are skipped by size
        pos += size

    if stack:
        raise UnbalancedElements(f"<{stack[-1].name}> is never closed", offset=stack[-1].offset)
    if len(roots) != 1:
        raise UnbalancedElements(f"expected one root element, found {len(roots)}", offset=hsize)
    return XmlDocument(string_pool=r.strings, resource_ids=tuple(r.resource_ids), root=roots[0])

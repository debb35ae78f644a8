# apkwarden/services/dex/reader.py
from __future__ import annotations

import struct
from typing import Tuple

from apkwarden.services.dex.errors import TruncatedSection


class ByteReader:
    """Bounds-checked little-endian reads over an immutable buffer."""

    def __init__(self, data: bytes):
        self.data = data
        self.size = len(data)

    def require(self, offset: int, length: int, what: str) -> None:
        if offset < 0 or length < 0 or offset + length > self.size:
            raise TruncatedSection(
                f"{what} at 0x{offset:x} (+{length}) runs past end of file (0x{self.size:x})",
                offset=offset,
            )

    def unpack(self, fmt: str, offset: int, what: str) -> Tuple:
        st = struct.Struct(fmt)
        self.require(offset, st.size, what)
        return st.unpack_from(self.data, offset)

    def u16(self, offset: int, what: str = "u16") -> int:
        return self.unpack("<H", offset, what)[0]

    def u32(self, offset: int, what: str = "u32") -> int:
        return self.unpack("<I", offset, what)[0]

    def uleb128(self, offset: int, what: str = "uleb128") -> Tuple[int, int]:
        result = shift = 0
        pos = offset
        for _ in range(5):
            self.require(pos, 1, what)
            b = self.data[pos]
            pos += 1
            result |= (b & 0x7F) << shift
            if not b & 0x80:
                return result, pos
            shift += 7
        raise TruncatedSection(f"{what} at 0x{offset:x} longer than 5 bytes", offset=offset)

    def sleb128(self, offset: int, what: str = "sleb128") -> Tuple[int, int]:
        result = shift = 0
        pos = offset
        b = 0x80
        while b & 0x80:
            self.require(pos, 1, what)
            b = self.data[pos]
            pos += 1
            result |= (b & 0x7F) << shift
            shift += 7
        if b & 0x40:
            result -= 1 << shift
        return result, pos


def decode_mutf8(raw: bytes) -> Tuple[str, bool]:
    """
    Decode DEX modified UTF-8 (NUL encoded as C0 80, supplementary characters as surrogate
    pairs of 3-byte sequences). Returns the text and whether any replacement happened.
    """
    units = []
    repaired = False
    i, n = 0, len(raw)
    while i < n:
        b = raw[i]
        if b < 0x80:
            units.append(b)
            i += 1
        elif b & 0xE0 == 0xC0 and i + 1 < n and raw[i + 1] & 0xC0 == 0x80:
            units.append(((b & 0x1F) << 6) | (raw[i + 1] & 0x3F))
            i += 2
        elif (
            b & 0xF0 == 0xE0
            and i + 2 < n
            and raw[i + 1] & 0xC0 == 0x80
            and raw[i + 2] & 0xC0 == 0x80
        ):
            units.append(((b & 0x0F) << 12) | ((raw[i + 1] & 0x3F) << 6) | (raw[i + 2] & 0x3F))
            i += 3
        else:
            units.append(0xFFFD)
            repaired = True
            i += 1
    packed = struct.pack(f"<{len(units)}H", *units)
    try:
        return packed.decode("utf-16-le"), repaired
    except UnicodeDecodeError:
        # unpaired surrogates
        return packed.decode("utf-16-le", "replace"), True


def utf16_sort_key(s: str) -> bytes:
    """DEX string order: by UTF-16 code units."""
    return s.encode("utf-16-be", "surrogatepass")

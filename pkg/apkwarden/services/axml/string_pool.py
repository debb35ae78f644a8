# apkwarden/services/axml/string_pool.py
from __future__ import annotations

import struct
from typing import Tuple

from apkwarden.services.axml.constants import UTF8_FLAG
from apkwarden.services.axml.errors import TruncatedChunk


def _utf8_length(buf: bytes, pos: int) -> Tuple[int, int]:
    first = buf[pos]
    if first & 0x80:
        return ((first & 0x7F) << 8) | buf[pos + 1], pos + 2
    return first, pos + 1


def _utf16_length(buf: bytes, pos: int) -> Tuple[int, int]:
    (first,) = struct.unpack_from("<H", buf, pos)
    if first & 0x8000:
        (second,) = struct.unpack_from("<H", buf, pos + 2)
        return ((first & 0x7FFF) << 16) | second, pos + 4
    return first, pos + 2


def read_string_pool(buf: bytes, start: int, header_size: int, size: int) -> Tuple[str, ...]:
    """
    Decode a ResStringPool chunk starting at ``start`` (chunk header included).

    Layout after the 8-byte chunk header: string_count, style_count, flags, strings_start,
    styles_start (u32 each), then string_count u32 offsets relative to strings_start.
    Styles are not needed for manifests/layouts and are skipped.
    """
    end = start + size
    try:
        count, _styles, flags, strings_start, _styles_start = struct.unpack_from(
            "<5I", buf, start + 8
        )
        offsets = struct.unpack_from(f"<{count}I", buf, start + header_size)
    except struct.error as e:
        raise TruncatedChunk(f"string pool header truncated: {e}", offset=start) from e

    utf8 = bool(flags & UTF8_FLAG)
    base = start + strings_start
    out = []
    for i, rel in enumerate(offsets):
        pos = base + rel
        try:
            if utf8:
                _chars, pos = _utf8_length(buf, pos)
                nbytes, pos = _utf8_length(buf, pos)
                raw = buf[pos : pos + nbytes]
                if pos + nbytes > end:
                    raise IndexError
                out.append(raw.decode("utf-8", "replace"))
            else:
                chars, pos = _utf16_length(buf, pos)
                if pos + 2 * chars > end:
                    raise IndexError
                out.append(buf[pos : pos + 2 * chars].decode("utf-16-le", "replace"))
        except (IndexError, struct.error) as e:
            raise TruncatedChunk(f"string #{i} runs past the string pool", offset=pos) from e
    return tuple(out)

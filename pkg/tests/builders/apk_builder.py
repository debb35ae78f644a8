# tests/builders/apk_builder.py
from __future__ import annotations

import io
import warnings
import zipfile
from pathlib import Path
from typing import Iterable, Mapping, Tuple, Union

Entries = Union[Mapping[str, bytes], Iterable[Tuple[str, bytes]]]


def build_apk(entries: Entries, *, compression: int = zipfile.ZIP_DEFLATED) -> bytes:
    """
    ZIP container with the given entries in order. Duplicate names are written as-is so
    tests can produce archives the platform would reject.
    """
    items = entries.items() if isinstance(entries, Mapping) else entries
    buf = io.BytesIO()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)  # "Duplicate name"
        with zipfile.ZipFile(buf, "w", compression=compression) as zf:
            for name, data in items:
                zf.writestr(name, data)
    return buf.getvalue()


def write_apk(path: Path, entries: Entries, **kwargs) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(build_apk(entries, **kwargs))
    return path

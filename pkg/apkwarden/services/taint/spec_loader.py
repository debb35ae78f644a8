# apkwarden/services/taint/spec_loader.py
from __future__ import annotations

from pathlib import Path
from typing import Iterable, List

from apkwarden.domain.entities.patterns import MethodPattern
from apkwarden.domain.entities.taint import TaintPattern, TaintSpec
from apkwarden.domain.enums.channel import Channel, SourceKind
from apkwarden.domain.errors import DataFileError


def parse_taint_spec(lines: Iterable[str], *, source: str = "<sources-sinks>") -> TaintSpec:
    """
    One record per line::

        source|sink <label> <class descriptor> <method name> <(params) or *>

    Sinks carry a channel label, sources a source kind. ``#`` starts a comment.
    """
    sources: List[TaintPattern] = []
    sinks: List[TaintPattern] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 5:
            raise DataFileError(
                f"line {lineno}: expected 5 columns, got {len(parts)}", entry=source
            )
        role, label, cls, name, params = parts
        try:
            if not (cls.startswith("L") and cls.endswith(";")) and cls != "*":
                raise ValueError(f"bad class descriptor {cls!r}")
            pattern = MethodPattern.of(cls, name, params)
            if role == "source":
                sources.append(TaintPattern("source", SourceKind.parse(label), pattern, lineno))
            elif role == "sink":
                sinks.append(TaintPattern("sink", Channel.parse(label), pattern, lineno))
            else:
                raise ValueError(f"role must be 'source' or 'sink', got {role!r}")
        except ValueError as e:
            raise DataFileError(f"line {lineno}: {e}", entry=source) from None
    if not sources and not sinks:
        raise DataFileError("no source/sink records", entry=source)
    return TaintSpec(sources=tuple(sources), sinks=tuple(sinks))


def load_taint_spec(path: Path | str) -> TaintSpec:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise DataFileError("source/sink file not found", entry=str(p)) from None
    return parse_taint_spec(text.splitlines(), source=str(p))

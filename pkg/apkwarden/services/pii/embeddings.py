# apkwarden/services/pii/embeddings.py
from __future__ import annotations

from pathlib import Path
from typing import Iterable, List, TextIO

import numpy as np

from apkwarden.domain.entities.pii import EmbeddingStore
from apkwarden.domain.errors import DataFileError
from apkwarden.services.pii.errors import BadHeader, DimensionMismatch, NonFiniteValue


def _header(line: str) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 2:
        raise BadHeader(f"expected '<vocab_count> <dimension>', got {line.strip()!r}")
    try:
        count, dim = int(parts[0]), int(parts[1])
    except ValueError:
        raise BadHeader(f"non-integer header: {line.strip()!r}") from None
    if count < 0 or dim <= 0:
        raise BadHeader(f"invalid header values: count={count} dimension={dim}")
    return count, dim


def load_embeddings(data: TextIO | Iterable[str], *, source: str | None = None) -> EmbeddingStore:
    """
    Read a word2vec text file: ``<vocab_count> <dimension>`` then ``word v1 .. vd`` rows.

    Words are lowercased and must be unique; the number of rows must equal the declared
    count.
    """
    lines = iter(data)
    first = next(lines, None)
    if first is None:
        raise BadHeader("empty embeddings file", entry=source)
    try:
        count, dim = _header(first)
    except BadHeader as e:
        raise e.located(source) if source else e

    words: List[str] = []
    seen: set[str] = set()
    matrix = np.zeros((count, dim), dtype=np.float64)
    rows = 0
    for lineno, raw in enumerate(lines, start=2):
        if not raw.strip():
            continue
        parts = raw.rstrip("\n").split()
        if rows >= count:
            raise BadHeader(f"more rows than the declared {count} (line {lineno})", entry=source)
        if len(parts) != dim + 1:
            raise DimensionMismatch(
                f"line {lineno}: {len(parts) - 1} components, expected {dim}", entry=source
            )
        try:
            vec = np.array([float(p) for p in parts[1:]], dtype=np.float64)
        except ValueError:
            raise NonFiniteValue(f"line {lineno}: unparsable component", entry=source) from None
        if not np.all(np.isfinite(vec)):
            raise NonFiniteValue(f"line {lineno}: NaN/Inf component", entry=source)
        word = parts[0].lower()
        rows += 1
        if word in seen:
            raise BadHeader(f"line {lineno}: duplicate word {word!r}", entry=source)
        seen.add(word)
        matrix[len(words)] = vec
        words.append(word)
    if rows != count:
        raise BadHeader(f"header declares {count} words, file has {rows}", entry=source)
    return EmbeddingStore(dimension=dim, words=tuple(words), matrix=matrix[: len(words)])


def load_embeddings_file(path: Path | str) -> EmbeddingStore:
    p = Path(path)
    try:
        fh = p.open("r", encoding="utf-8")
    except FileNotFoundError:
        raise DataFileError("embeddings file not found", entry=str(p)) from None
    with fh:
        return load_embeddings(fh, source=str(p))

# apkwarden/domain/entities/pii.py
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from apkwarden.domain.entities.dex import MethodId
from apkwarden.domain.entities.warnings import ScanWarning
from apkwarden.domain.enums.pii_origin import PiiBinding, PiiOrigin


@dataclass(frozen=True)
class EmbeddingStore:
    """
    Word vectors loaded from a word2vec text file. ``words`` and the rows of ``matrix`` are
    aligned; keys are lowercase and every component is finite.
    """

    dimension: int
    words: Tuple[str, ...]
    matrix: np.ndarray = field(repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.dimension <= 0:
            raise ValueError("dimension must be positive")
        if self.matrix.shape != (len(self.words), self.dimension):
            raise ValueError("matrix shape does not match vocabulary/dimension")
        object.__setattr__(self, "_index", {w: i for i, w in enumerate(self.words)})

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return word in self._index  # type: ignore[attr-defined]

    def index_of(self, word: str) -> Optional[int]:
        return self._index.get(word)  # type: ignore[attr-defined]

    def vector(self, word: str) -> np.ndarray:
        i = self.index_of(word)
        if i is None:
            raise KeyError(word)
        return self.matrix[i]

    @property
    def vocab(self) -> Dict[str, np.ndarray]:
        return {w: self.matrix[i] for i, w in enumerate(self.words)}


@dataclass(frozen=True)
class Synonym:
    word: str
    similarity: float
    accepted: bool = True


@dataclass(frozen=True)
class KeywordDatabase:
    """
    Seeds plus ranked synonym expansions. ``keywords`` is the ordered keyword list used for
    matching (seeds first in file order, then accepted expansions in rank order); the first
    keyword that matches a widget wins.
    """

    seeds: Tuple[str, ...]
    expanded: Mapping[str, Tuple[Synonym, ...]]
    k: int = 5
    keywords: Tuple[str, ...] = ()
    warnings: Tuple[ScanWarning, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if not self.keywords:
            ordered: List[str] = []
            for w in self.seeds:
                if w not in ordered:
                    ordered.append(w)
            for seed in self.seeds:
                for syn in self.expanded.get(seed, ()):
                    if syn.accepted and syn.word not in ordered:
                        ordered.append(syn.word)
            object.__setattr__(self, "keywords", tuple(ordered))

    @property
    def all_keywords(self) -> frozenset[str]:
        return frozenset(self.keywords)

    @classmethod
    def from_seeds(cls, seeds: Tuple[str, ...] | List[str]) -> "KeywordDatabase":
        return cls(seeds=tuple(seeds), expanded={}, k=0)

    def empty(self) -> bool:
        return not self.keywords


@dataclass(frozen=True)
class PiiLocation:
    """Where a PII variable was found: a layout entry, or a code site inside a DEX entry."""

    entry: str
    method: Optional[MethodId] = None
    offset: Optional[int] = None
    field: Optional[str] = None

    def __str__(self) -> str:
        if self.method is None:
            return self.entry if self.field is None else f"{self.entry}:{self.field}"
        tail = f"@0x{self.offset:x}" if self.offset is not None else ""
        return f"{self.entry}:{self.method}{tail}"


@dataclass(frozen=True)
class PiiVariable:
    origin: PiiOrigin
    matched_keyword: str
    identifier: str
    location: PiiLocation
    resource_id: Optional[int] = None
    binding: Optional[PiiBinding] = None

    @property
    def is_code(self) -> bool:
        return self.origin == PiiOrigin.CodeIdentifier

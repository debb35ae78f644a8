# apkwarden/services/pii/keywords.py
from __future__ import annotations

from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
from pydantic import ValidationError

from apkwarden.common.logging import get_logger
from apkwarden.domain.entities.pii import EmbeddingStore, KeywordDatabase, Synonym
from apkwarden.domain.entities.warnings import ScanWarning
from apkwarden.domain.errors import DataFileError
from apkwarden.services.schemas.keywords import KeywordDatabaseExport, SynonymSchema

log = get_logger(__name__)

# similarities are compared at this precision so ties are decided by the word, not float noise
_RANK_DIGITS = 12


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine similarity; 0.0 when either vector is all zeros."""
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a, b) / (na * nb))


def _similarities(store: EmbeddingStore, query: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(store.matrix, axis=1)
    qn = float(np.linalg.norm(query))
    with np.errstate(divide="ignore", invalid="ignore"):
        sims = store.matrix @ query / (norms * qn)
    return np.where(norms == 0.0, np.nan, sims) if qn else np.full(len(store), np.nan)


def _lookup(store: EmbeddingStore, seed: str) -> Optional[int]:
    for form in (seed, seed.replace(" ", "_"), seed.replace(" ", "")):
        idx = store.index_of(form)
        if idx is not None:
            return idx
    return None


def nearest(store: EmbeddingStore, seed: str, k: int) -> List[Tuple[str, float]]:
    """
    Top-``k`` vocabulary words by cosine similarity to ``seed`` (the seed excluded),
    similarity descending, ties by word ascending. Zero vectors never appear.
    """
    idx = _lookup(store, seed)
    if idx is None or k <= 0:
        return []
    sims = _similarities(store, store.matrix[idx])
    ranked = sorted(
        (
            (-round(float(s), _RANK_DIGITS), store.words[i])
            for i, s in enumerate(sims)
            if i != idx and not np.isnan(s)
        )
    )
    return [(word, -neg) for neg, word in ranked[:k]]


def expand_keywords(
    store: EmbeddingStore,
    seeds: Iterable[str],
    k: int = 5,
    *,
    allow: Optional[Iterable[str]] = None,
    deny: Optional[Iterable[str]] = None,
) -> KeywordDatabase:
    """
    Expand each seed with its ``k`` nearest neighbours.

    Review lists decide acceptance: a word on ``deny`` is rejected; when ``allow`` is given
    only words on it are accepted. Rejected synonyms stay in the expansion (with
    ``accepted=False``) so reviewers see them, but never enter the keyword list.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    ordered = list(dict.fromkeys(s.strip().lower() for s in seeds if s.strip()))
    if not ordered:
        raise ValueError("at least one seed keyword is required")
    allow_set = {w.lower() for w in allow} if allow is not None else None
    deny_set = {w.lower() for w in deny or ()}

    expanded: Dict[str, Tuple[Synonym, ...]] = {}
    warnings: List[ScanWarning] = []
    for seed in ordered:
        if _lookup(store, seed) is None:
            warnings.append(ScanWarning("seed-not-in-vocab", f"seed {seed!r} has no embedding"))
            log.warning("seed %r not in embedding vocabulary", seed)
            expanded[seed] = ()
            continue
        syns = []
        for word, sim in nearest(store, seed, k):
            accepted = word not in deny_set and (allow_set is None or word in allow_set)
            syns.append(Synonym(word, sim, accepted))
        expanded[seed] = tuple(syns)
    return KeywordDatabase(seeds=tuple(ordered), expanded=expanded, k=k, warnings=tuple(warnings))


def to_export(db: KeywordDatabase) -> KeywordDatabaseExport:
    return KeywordDatabaseExport(
        k=db.k,
        seeds=list(db.seeds),
        expansions={
            seed: [
                SynonymSchema(word=s.word, similarity=round(s.similarity, 6), accepted=s.accepted)
                for s in syns
            ]
            for seed, syns in db.expanded.items()
        },
        keywords=list(db.keywords),
    )


def export_keyword_db(db: KeywordDatabase, path: Path | str) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(to_export(db).model_dump_json(indent=2) + "\n", encoding="utf-8")
    return p


def load_keyword_db(path: Path | str) -> KeywordDatabase:
    """Load a reviewed export back; ``keywords`` in the file is recomputed, not trusted."""
    p = Path(path)
    try:
        raw = KeywordDatabaseExport.model_validate_json(p.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise DataFileError("keyword database not found", entry=str(p)) from None
    except ValidationError as e:
        raise DataFileError(
            f"invalid keyword database: {e.error_count()} error(s)", entry=str(p)
        ) from e
    expanded = {
        seed.lower(): tuple(Synonym(s.word.lower(), s.similarity, s.accepted) for s in syns)
        for seed, syns in raw.expansions.items()
    }
    return KeywordDatabase(seeds=tuple(s.lower() for s in raw.seeds), expanded=expanded, k=raw.k)

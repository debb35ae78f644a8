# apkwarden/services/scan/keywords.py
from __future__ import annotations

from pathlib import Path
from typing import List, Optional

from apkwarden.common.logging import get_logger
from apkwarden.common.strings import read_list_file
from apkwarden.domain.entities.pii import KeywordDatabase
from apkwarden.domain.errors import DataFileError
from apkwarden.services.pii.embeddings import load_embeddings_file
from apkwarden.services.pii.keywords import expand_keywords, export_keyword_db

log = get_logger(__name__)


def _word_list(path: Path | str, what: str) -> List[str]:
    try:
        return read_list_file(path)
    except FileNotFoundError:
        raise DataFileError(f"{what} file not found", entry=str(path)) from None


def keywords_build(
    embeddings: Path | str,
    seeds: Path | str,
    *,
    k: int = 5,
    allow: Optional[Path | str] = None,
    deny: Optional[Path | str] = None,
    out: Optional[Path | str] = None,
) -> KeywordDatabase:
    """
    Expand the seed list with embedding neighbours, apply the review lists and, when ``out``
    is given, write the keyword database export there.
    """
    store = load_embeddings_file(embeddings)
    try:
        db = expand_keywords(
            store,
            _word_list(seeds, "seed"),
            k,
            allow=_word_list(allow, "allow list") if allow is not None else None,
            deny=_word_list(deny, "deny list") if deny is not None else None,
        )
    except ValueError as e:
        raise DataFileError(str(e), entry=str(seeds)) from None
    log.info("keyword database: %d seeds, %d keywords", len(db.seeds), len(db.keywords))
    if out is not None:
        export_keyword_db(db, out)
    return db

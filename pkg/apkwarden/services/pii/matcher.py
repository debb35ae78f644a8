# apkwarden/services/pii/matcher.py
from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple

from apkwarden.common.strings import split_identifier, split_words
from apkwarden.domain.entities.pii import KeywordDatabase, PiiLocation, PiiVariable
from apkwarden.domain.entities.widget import WidgetDecl
from apkwarden.domain.enums.pii_origin import PiiOrigin

KeywordTokens = Tuple[Tuple[str, Tuple[str, ...]], ...]


def keyword_tokens(keywords: Iterable[str]) -> KeywordTokens:
    """Pre-split keywords ("phone number" -> ("phone", "number")), database order kept."""
    out = []
    for kw in keywords:
        toks = tuple(split_words(kw))
        if toks:
            out.append((kw, toks))
    return tuple(out)


def _contains(tokens: Sequence[str], needle: Tuple[str, ...]) -> bool:
    n = len(needle)
    return any(tuple(tokens[i : i + n]) == needle for i in range(len(tokens) - n + 1))


def first_keyword(tokens: Sequence[str], keywords: KeywordTokens) -> Optional[str]:
    """First keyword (database order) whose token sequence occurs as whole tokens."""
    if not tokens:
        return None
    for kw, needle in keywords:
        if _contains(tokens, needle):
            return kw
    return None


def match_identifier(name: str | None, keywords: KeywordTokens) -> Optional[str]:
    return first_keyword(split_identifier(name), keywords)


def _match_widget(w: WidgetDecl, keywords: KeywordTokens) -> Optional[PiiVariable]:
    fields = (
        (PiiOrigin.WidgetId, w.id_name, split_identifier(w.id_name)),
        (PiiOrigin.WidgetHint, w.hint_text, split_words(w.hint_text)),
        (PiiOrigin.WidgetText, w.text, split_words(w.text)),
    )
    for kw, needle in keywords:
        for origin, value, tokens in fields:
            if value and _contains(tokens, needle):
                return PiiVariable(
                    origin=origin,
                    matched_keyword=kw,
                    identifier=value,
                    location=PiiLocation(entry=w.source_file),
                    resource_id=w.resource_id,
                )
    return None


def _sort_key(v: PiiVariable) -> tuple:
    return (v.location.entry, v.identifier, v.origin.value, v.matched_keyword)


def identify_pii_variables(
    widgets: Iterable[WidgetDecl], db: KeywordDatabase | Iterable[str]
) -> List[PiiVariable]:
    """
    Tag widgets whose id name (identifier tokens) or hint/text (words) contains a keyword.

    One PiiVariable per widget, for the first keyword in database order; the id is tried
    before hint and text for that keyword. The result is sorted, so it does not depend on
    the order of ``widgets``.
    """
    keywords = keyword_tokens(db.keywords if isinstance(db, KeywordDatabase) else db)
    found = {var for w in widgets if (var := _match_widget(w, keywords)) is not None}
    return sorted(found, key=_sort_key)

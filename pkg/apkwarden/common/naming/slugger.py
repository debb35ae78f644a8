# apkwarden/common/naming/slugger.py
from __future__ import annotations

import re
import unicodedata
from typing import Container

_slug_re = re.compile(r"[^a-z0-9]+")


def slugify(text: str, *, max_len: int = 64) -> str:
    """
    Deterministic, filesystem-friendly slug:
      - lowercases
      - NFKD normalize and strip to ASCII
      - collapse separators to single '-'
      - trim leading/trailing '-'
      - truncate to `max_len`
      - returns '' if nothing remains

    Examples:
      "COVID Tracker.apk" -> "covid-tracker-apk"
      "  Funny__Name!! " -> "funny-name"
    """
    if text is None:
        return ""

    value = unicodedata.normalize("NFKD", str(text).strip().lower())
    value = value.encode("ascii", "ignore").decode("ascii")
    value = _slug_re.sub("-", value).strip("-")

    if max_len > 0 and len(value) > max_len:
        value = value[:max_len].rstrip("-")

    return value


def report_file_name(
    stem: str, sha256: str, *, suffix: str = ".json", taken: Container[str] = ()
) -> str:
    """
    Per-app report name: '<slug>-<first 12 hex of digest><suffix>'. A name already in
    ``taken`` (one APK copied into two directories) gets a counter: '...-2<suffix>'.
    """
    base = f"{slugify(stem) or 'apk'}-{sha256[:12]}"
    name, n = f"{base}{suffix}", 1
    while name in taken:
        n += 1
        name = f"{base}-{n}{suffix}"
    return name

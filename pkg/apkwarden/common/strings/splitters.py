from __future__ import annotations

import re
from pathlib import Path
from typing import Iterable, List

# acronym run before a capitalised word, lower->upper, letter<->digit
_camel_re = re.compile(r"[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z]+|[A-Z]+|\d+")
_sep_re = re.compile(r"[_\-\s.$/]+")
_word_re = re.compile(r"[A-Za-z0-9]+")


def csv_to_list(v: str | List[str] | None) -> List[str]:
    if v is None:
        return []
    if isinstance(v, (list, tuple)):
        return [str(s).strip() for s in v if s and str(s).strip()]
    return [s.strip() for s in str(v).split(",") if s.strip()]


def split_identifier(name: str | None) -> List[str]:
    """
    Lowercased tokens of an identifier.

    Splits on '_', '-', whitespace, '.', '$', '/', camelCase and acronym boundaries and
    letter/digit boundaries:
      "personal_details_name" -> ["personal", "details", "name"]
      "userPhoneNumber"       -> ["user", "phone", "number"]
      "HTTPServer2"           -> ["http", "server", "2"]
      "username"              -> ["username"]
    """
    if not name:
        return []
    out: List[str] = []
    for part in _sep_re.split(name):
        if part:
            out.extend(m.group(0).lower() for m in _camel_re.finditer(part))
    return out


def split_words(text: str | None) -> List[str]:
    """Lowercased alphanumeric words of free text ("Full name:" -> ["full", "name"])."""
    if not text:
        return []
    return [m.group(0).lower() for m in _word_re.finditer(text)]


def iter_list_lines(lines: Iterable[str]) -> List[str]:
    """Strip '#' comments and blanks from one-entry-per-line text."""
    out: List[str] = []
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def read_list_file(path: Path | str) -> List[str]:
    """UTF-8 one-token-per-line file with '#' comments (seeds, allow/deny lists)."""
    with Path(path).open("r", encoding="utf-8") as fh:
        return iter_list_lines(fh)

# apkwarden/services/trackers/signatures.py
from __future__ import annotations

from functools import lru_cache
from pathlib import Path
from typing import Any, List, Mapping, Tuple

import yaml

from apkwarden.common.settings import PACKAGE_DATA
from apkwarden.domain.entities.trackers import TrackerSignature
from apkwarden.domain.errors import DataFileError


def _to_descriptor_prefix(prefix: str) -> str:
    """Accept ``com.google.firebase.analytics`` as well as ``Lcom/google/firebase/analytics/``."""
    p = prefix.strip()
    if p.startswith("L") and "/" in p:
        return p
    return "L" + p.replace(".", "/").rstrip("/") + "/"


def parse_tracker_signatures(raw: Any, *, source: str = "<trackers>") -> List[TrackerSignature]:
    if not isinstance(raw, Mapping) or not isinstance(raw.get("trackers"), list):
        raise DataFileError("tracker file must be a mapping with a 'trackers' list", entry=source)
    out: List[TrackerSignature] = []
    names = set()
    for i, entry in enumerate(raw["trackers"]):
        if not isinstance(entry, Mapping):
            raise DataFileError(f"record {i}: expected a mapping", entry=source)
        name = str(entry.get("name") or "").strip()
        prefixes = entry.get("prefixes") or []
        if isinstance(prefixes, str):
            prefixes = [prefixes]
        try:
            sig = TrackerSignature(
                name=name,
                package_prefixes=tuple(_to_descriptor_prefix(str(p)) for p in prefixes),
                website=entry.get("website"),
            )
        except ValueError as e:
            raise DataFileError(f"record {i}: {e}", entry=source) from None
        if sig.name in names:
            raise DataFileError(f"duplicate tracker name {sig.name!r}", entry=source)
        names.add(sig.name)
        out.append(sig)
    return out


def load_tracker_signatures(path: Path | str) -> List[TrackerSignature]:
    p = Path(path)
    try:
        raw = yaml.safe_load(p.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise DataFileError("tracker signature file not found", entry=str(p)) from None
    except yaml.YAMLError as e:
        raise DataFileError(f"invalid YAML: {e}", entry=str(p)) from None
    return parse_tracker_signatures(raw, source=str(p))


@lru_cache(maxsize=1)
def _default_signatures() -> Tuple[TrackerSignature, ...]:
    return tuple(load_tracker_signatures(PACKAGE_DATA / "trackers.yaml"))


def default_tracker_signatures() -> List[TrackerSignature]:
    return list(_default_signatures())

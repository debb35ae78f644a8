# apkwarden/services/taint/entry_points.py
from __future__ import annotations

from functools import lru_cache
from pathlib import Path

import yaml

from apkwarden.common.settings import PACKAGE_DATA
from apkwarden.domain.errors import DataFileError
from apkwarden.domain.policies.entry_points import EntryPointPolicy


def load_entry_point_policy(path: Path | str) -> EntryPointPolicy:
    p = Path(path)
    try:
        raw = yaml.safe_load(p.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise DataFileError("entry-point policy not found", entry=str(p)) from None
    except yaml.YAMLError as e:
        raise DataFileError(f"invalid YAML: {e}", entry=str(p)) from None
    if not isinstance(raw, dict):
        raise DataFileError("entry-point policy must be a mapping", entry=str(p))
    try:
        return EntryPointPolicy.from_mapping(raw)
    except ValueError as e:
        raise DataFileError(str(e), entry=str(p)) from None


@lru_cache(maxsize=1)
def default_entry_point_policy() -> EntryPointPolicy:
    return load_entry_point_policy(PACKAGE_DATA / "entry_points.yaml")

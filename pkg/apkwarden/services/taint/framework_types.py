# apkwarden/services/taint/framework_types.py
from __future__ import annotations

from functools import lru_cache
from pathlib import Path

import yaml

from apkwarden.common.settings import PACKAGE_DATA
from apkwarden.domain.errors import DataFileError
from apkwarden.domain.policies.framework_types import FrameworkTypes


def load_framework_types(path: Path | str) -> FrameworkTypes:
    p = Path(path)
    try:
        raw = yaml.safe_load(p.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise DataFileError("framework type table not found", entry=str(p)) from None
    except yaml.YAMLError as e:
        raise DataFileError(f"invalid YAML: {e}", entry=str(p)) from None
    if not isinstance(raw, dict):
        raise DataFileError("framework type table must be a mapping", entry=str(p))
    try:
        return FrameworkTypes.from_mapping(raw)
    except ValueError as e:
        raise DataFileError(str(e), entry=str(p)) from None


@lru_cache(maxsize=1)
def default_framework_types() -> FrameworkTypes:
    return load_framework_types(PACKAGE_DATA / "framework_types.yaml")

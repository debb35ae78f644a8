# tests/conftest.py
from __future__ import annotations

from pathlib import Path
from typing import Iterable, List

import pytest

from apkwarden.common.settings import DataFilesConfig
from apkwarden.services.scan.data import AnalysisData, load_analysis_data
from tests.builders.apps import MiniApp


@pytest.fixture(scope="session")
def analysis_data() -> AnalysisData:
    """The shipped data files (rules, sources/sinks, seeds, trackers, entry points)."""
    return load_analysis_data(DataFilesConfig())


@pytest.fixture()
def write_apps(tmp_path):
    """Write fixture apps as ``<name>.apk`` into a fresh corpus directory."""

    def _write(apps: Iterable[MiniApp], subdir: str = "corpus") -> List[Path]:
        root = tmp_path / subdir
        root.mkdir(parents=True, exist_ok=True)
        return [app.write(root) for app in apps]

    return _write

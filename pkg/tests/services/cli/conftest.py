# tests/services/cli/conftest.py
from __future__ import annotations

import pytest
from click.testing import CliRunner

from apkwarden.common.settings import get_settings


@pytest.fixture(autouse=True)
def _isolated_settings(monkeypatch, tmp_path):
    """No developer environment or .env file leaks into a command under test."""
    monkeypatch.chdir(tmp_path)
    for var in ("SCAN_API_KEY", "MALWARE__MODE", "LOG_LEVEL"):
        monkeypatch.delenv(var, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()

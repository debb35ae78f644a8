# tests/common/conftest.py
from __future__ import annotations

import pytest

from apkwarden.common.settings import get_settings


@pytest.fixture(autouse=True)
def _fresh_settings(monkeypatch):
    """Every test sees settings built from its own environment."""
    for var in ("APP_ENV", "LOG_LEVEL", "SCAN_API_KEY"):
        monkeypatch.delenv(var, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()

import pytest
from pydantic import ValidationError

from apkwarden.common.settings import PACKAGE_DATA, Settings, get_settings


def test_settings_defaults():
    cfg = get_settings()
    assert cfg.app_name == "apkwarden"
    assert cfg.analysis.taint_max_depth == 6
    assert cfg.analysis.expansion_k == 5
    assert cfg.malware.mode == "stub"
    assert cfg.malware_enabled is False
    assert cfg.malware.upload_enabled is False
    assert cfg.scan_api_key is None
    assert cfg.data.keywords is None

    # bundled data files ship with the package
    for path in (cfg.data.rules, cfg.data.sources_sinks, cfg.data.seeds, cfg.data.trackers):
        assert path.parent == PACKAGE_DATA
        assert path.exists()


def test_settings_cached():
    assert get_settings() is get_settings()


def test_settings_nested_env(monkeypatch, tmp_path):
    monkeypatch.setenv("ANALYSIS__TAINT_MAX_DEPTH", "3")
    monkeypatch.setenv("ANALYSIS__WIDGET_SUFFIXES", '["EditText", "Spinner"]')
    monkeypatch.setenv("MALWARE__MODE", "on")
    monkeypatch.setenv("MALWARE__UPLOAD_ENABLED", "yes")
    monkeypatch.setenv("MALWARE__CACHE_DIR", str(tmp_path / "verdicts"))
    monkeypatch.setenv("SCAN_API_KEY", "k-123")

    cfg = get_settings()
    assert cfg.analysis.taint_max_depth == 3
    assert cfg.analysis.widget_suffixes == ["EditText", "Spinner"]
    assert cfg.malware_enabled is True
    assert cfg.malware.upload_enabled is True
    assert cfg.malware.cache_dir == tmp_path / "verdicts"
    assert cfg.scan_api_key == "k-123"
    # the key is never echoed
    assert "k-123" not in repr(cfg)


def test_settings_reject_out_of_range(monkeypatch):
    monkeypatch.setenv("ANALYSIS__TAINT_MAX_DEPTH", "0")
    with pytest.raises(ValidationError):
        Settings()


def test_settings_reject_unknown_malware_mode(monkeypatch):
    monkeypatch.setenv("MALWARE__MODE", "maybe")
    with pytest.raises(ValidationError):
        Settings()

# apkwarden/common/settings.py
from __future__ import annotations

from functools import lru_cache
from pathlib import Path
from typing import List, Literal, Optional

from pydantic import BaseModel, Field, computed_field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from apkwarden.common.strings.splitters import csv_to_list

PACKAGE_DATA = Path(__file__).resolve().parent.parent / "data"


def _to_bool(v: str | bool | int | None, default: bool = False) -> bool:
    if isinstance(v, bool):
        return v
    if v is None:
        return default
    s = str(v).strip().lower()
    return s in {"1", "true", "yes", "y", "on"}


class DataFilesConfig(BaseModel):
    rules: Path = PACKAGE_DATA / "rules.yaml"
    sources_sinks: Path = PACKAGE_DATA / "sources_sinks.txt"
    seeds: Path = PACKAGE_DATA / "seeds.txt"
    # Optional keyword-database export; when unset the seed list is used as-is.
    keywords: Optional[Path] = None
    trackers: Path = PACKAGE_DATA / "trackers.yaml"
    entry_points: Path = PACKAGE_DATA / "entry_points.yaml"
    framework_types: Path = PACKAGE_DATA / "framework_types.yaml"


class AnalysisConfig(BaseModel):
    taint_max_depth: int = Field(6, ge=1, le=32)
    expansion_k: int = Field(5, ge=0)
    widget_suffixes: List[str] = Field(
        default_factory=lambda: ["EditText", "TextView", "AutoCompleteTextView"]
    )
    field_rounds: int = Field(4, ge=1, description="Fixpoint cap for field-level taint")
    result_hops: int = Field(3, ge=0, description="Conversions followed by result-flow matchers")

    @field_validator("widget_suffixes", mode="before")
    @classmethod
    def _split_csv(cls, v):
        return csv_to_list(v)


class MalwareConfig(BaseModel):
    mode: Literal["stub", "on"] = "stub"
    endpoint: str = "https://www.virustotal.com/api/v3"
    upload_enabled: bool = False
    cache_dir: Path = Path(".apkwarden-cache/verdicts")
    timeout_sec: float = 30.0
    poll_attempts: int = 10
    poll_interval_sec: float = 15.0

    @field_validator("upload_enabled", mode="before")
    @classmethod
    def _boolify(cls, v):
        return _to_bool(v)


class ConcurrencyConfig(BaseModel):
    corpus_jobs: int = Field(4, ge=1, le=64)
    max_queue: int = 64


class Settings(BaseSettings):
    # -------- App / Env --------
    app_name: str = "apkwarden"
    app_env: str = "development"  # development|test|production
    log_level: str = "INFO"

    # -------- Malware service credentials --------
    scan_api_key: Optional[str] = Field(default=None, repr=False)

    # -------- Sub-configs --------
    data: DataFilesConfig = DataFilesConfig()
    analysis: AnalysisConfig = AnalysisConfig()
    malware: MalwareConfig = MalwareConfig()
    concurrency: ConcurrencyConfig = ConcurrencyConfig()

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_nested_delimiter="__",
        case_sensitive=False,
        extra="ignore",
    )

    @computed_field  # type: ignore[misc]
    @property
    def malware_enabled(self) -> bool:
        return self.malware.mode == "on"


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """
    Global settings accessor (cached). Use this everywhere you need config:
        from apkwarden.common.settings import get_settings
        cfg = get_settings()
    """
    return Settings()

# apkwarden/services/scan/data.py
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Tuple

from apkwarden.common.logging import get_logger
from apkwarden.common.settings import DataFilesConfig
from apkwarden.common.strings import read_list_file
from apkwarden.domain.entities.pii import KeywordDatabase
from apkwarden.domain.entities.rules import Rule
from apkwarden.domain.entities.taint import TaintSpec
from apkwarden.domain.entities.trackers import TrackerSignature
from apkwarden.domain.errors import DataFileError
from apkwarden.domain.policies.entry_points import EntryPointPolicy
from apkwarden.domain.policies.framework_types import FrameworkTypes
from apkwarden.services.pii.keywords import load_keyword_db
from apkwarden.services.rules.loader import load_rules
from apkwarden.services.taint.entry_points import load_entry_point_policy
from apkwarden.services.taint.framework_types import load_framework_types
from apkwarden.services.taint.spec_loader import load_taint_spec
from apkwarden.services.trackers.signatures import load_tracker_signatures

log = get_logger(__name__)


@dataclass(frozen=True)
class AnalysisData:
    """Every data file a scan consults, loaded once and shared read-only by corpus workers."""

    rules: Tuple[Rule, ...]
    spec: TaintSpec
    keywords: KeywordDatabase
    trackers: Tuple[TrackerSignature, ...]
    policy: EntryPointPolicy
    framework: FrameworkTypes

    @property
    def rule_count(self) -> int:
        return len(self.rules)

    @property
    def source_sink_count(self) -> int:
        return len(self.spec)

    @property
    def keyword_count(self) -> int:
        return len(self.keywords.keywords)

    @property
    def tracker_count(self) -> int:
        return len(self.trackers)


def seed_keywords(path: Path | str) -> KeywordDatabase:
    """Seed list used without expansion."""
    try:
        seeds = [w.lower() for w in read_list_file(path)]
    except FileNotFoundError:
        raise DataFileError("seed file not found", entry=str(path)) from None
    if not seeds:
        raise DataFileError("seed file lists no keywords", entry=str(path))
    return KeywordDatabase(seeds=tuple(dict.fromkeys(seeds)), expanded={}, k=0)


def load_analysis_data(files: DataFilesConfig) -> AnalysisData:
    """Load and validate all data files; any problem raises DataFileError naming the file."""
    keywords = load_keyword_db(files.keywords) if files.keywords else seed_keywords(files.seeds)
    data = AnalysisData(
        rules=tuple(load_rules(files.rules)),
        spec=load_taint_spec(files.sources_sinks),
        keywords=keywords,
        trackers=tuple(load_tracker_signatures(files.trackers)),
        policy=load_entry_point_policy(files.entry_points),
        framework=load_framework_types(files.framework_types),
    )
    log.debug(
        "data loaded: %d rules, %d sources/sinks, %d keywords, %d trackers",
        data.rule_count,
        data.source_sink_count,
        data.keyword_count,
        data.tracker_count,
    )
    return data

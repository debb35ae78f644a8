# tests/services/conftest.py
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List

import pytest

from apkwarden.common.settings import AnalysisConfig
from apkwarden.domain.entities.pii import PiiVariable
from apkwarden.domain.entities.warnings import ScanWarning
from apkwarden.services.dex import Program
from apkwarden.services.pii import bind_pii_to_code, identify_pii_variables
from apkwarden.services.scan.data import AnalysisData
from apkwarden.services.scan.service import ParsedApk, parse_apk
from apkwarden.services.taint import CallGraph, build_call_graph
from tests.builders.apps import MiniApp


@dataclass
class Analysed:
    """One fixture app taken through parsing, PII binding and call-graph construction."""

    app: MiniApp
    parsed: ParsedApk
    program: Program
    pii: List[PiiVariable]
    cg: CallGraph
    warnings: List[ScanWarning]

    @property
    def dexes(self):
        return self.parsed.dexes

    @property
    def manifest(self):
        return self.parsed.manifest


def _analyse(app: MiniApp, directory: Path, data: AnalysisData) -> Analysed:
    warnings: List[ScanWarning] = []
    parsed = parse_apk(app.write(directory), AnalysisConfig(), warnings)
    program = Program(parsed.dexes)
    pii = identify_pii_variables(parsed.widgets, data.keywords)
    for dex in parsed.dexes:
        pii = bind_pii_to_code(
            dex,
            pii,
            keywords=data.keywords,
            id_names=parsed.id_names,
            program=program,
        )
    cg = build_call_graph(parsed.dexes, parsed.manifest, policy=data.policy, program=program)
    return Analysed(app, parsed, program, pii, cg, warnings)


@pytest.fixture()
def analyse(tmp_path, analysis_data) -> Callable[[MiniApp], Analysed]:
    def _run(app: MiniApp) -> Analysed:
        return _analyse(app, tmp_path, analysis_data)

    return _run


@pytest.fixture(scope="session")
def analysed(tmp_path_factory, analysis_data) -> Callable[[MiniApp], Analysed]:
    """``analyse`` cached by app name for the session, for tests that draw many examples."""
    root = tmp_path_factory.mktemp("analysed")
    cache: Dict[str, Analysed] = {}

    def _get(app: MiniApp) -> Analysed:
        if app.name not in cache:
            cache[app.name] = _analyse(app, root, analysis_data)
        return cache[app.name]

    return _get

# tests/services/dex/conftest.py
from __future__ import annotations

import pytest

from apkwarden.services.dex import Program, parse_dex
from tests.builders.dex_assembler import assemble


@pytest.fixture
def program_of():
    """Build a Program from lists of ClassSpec, one list per DEX entry in multidex order."""

    def _build(*dex_classes):
        dexes = []
        for i, classes in enumerate(dex_classes):
            name = "classes.dex" if i == 0 else f"classes{i + 1}.dex"
            dexes.append(parse_dex(assemble(classes).data, name))
        return Program(dexes)

    return _build

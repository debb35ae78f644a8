# tests/domain/conftest.py
from __future__ import annotations

import pytest

from apkwarden.domain.entities.dex import MethodRef, Prototype


def _ref(cls: str, name: str, params=(), ret="V") -> MethodRef:
    short = "".join("L" if t[0] in "L[" else t for t in (ret, *params))
    return MethodRef(cls, name, Prototype(short, ret, tuple(params)))


@pytest.fixture
def make_ref():
    """Factory for MethodRef values without a parsed DEX."""
    return _ref

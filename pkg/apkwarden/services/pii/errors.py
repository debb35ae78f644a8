from __future__ import annotations

from apkwarden.domain.errors import ScanError


class EmbeddingError(ScanError):
    """The word-vector file cannot be used."""


class BadHeader(EmbeddingError):
    pass


class DimensionMismatch(EmbeddingError):
    pass


class NonFiniteValue(EmbeddingError):
    pass

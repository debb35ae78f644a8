from __future__ import annotations

from apkwarden.domain.errors import ScanError


class AxmlError(ScanError):
    pass


class BadMagic(AxmlError):
    pass


class TruncatedChunk(AxmlError):
    pass


class StringIndexOutOfRange(AxmlError):
    pass


class UnbalancedElements(AxmlError):
    pass


class NotAManifest(AxmlError):
    pass

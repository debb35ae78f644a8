from __future__ import annotations

from apkwarden.domain.errors import ScanError


class DexError(ScanError):
    pass


class BadMagic(DexError):
    pass


class UnsupportedVersion(DexError):
    pass


class TruncatedSection(DexError):
    pass


class IndexOutOfRange(DexError):
    pass


class MethodNotFound(DexError):
    pass


class AbstractOrNative(DexError):
    pass


class MalformedCode(DexError):
    pass

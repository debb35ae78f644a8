from __future__ import annotations

from apkwarden.domain.errors import ScanError


class ContainerError(ScanError):
    pass


class NotAZip(ContainerError):
    pass


class MissingManifest(ContainerError):
    pass


class DuplicateManifest(ContainerError):
    pass


class NoDexFound(ContainerError):
    pass


class TruncatedArchive(ContainerError):
    pass


class UnsupportedCompression(TruncatedArchive):
    def __init__(self, entry: str, method: int):
        super().__init__(f"unsupported ZIP compression method {method}", entry=entry)
        self.method = method


class Zip64Unsupported(TruncatedArchive):
    pass

from apkwarden.services.container.apk_reader import classify_entry, entries_of_kind, open_apk
from apkwarden.services.container.errors import (
    ContainerError,
    DuplicateManifest,
    MissingManifest,
    NoDexFound,
    NotAZip,
    TruncatedArchive,
    UnsupportedCompression,
    Zip64Unsupported,
)

__all__ = [
    "open_apk",
    "entries_of_kind",
    "classify_entry",
    "ContainerError",
    "NotAZip",
    "MissingManifest",
    "DuplicateManifest",
    "NoDexFound",
    "TruncatedArchive",
    "UnsupportedCompression",
    "Zip64Unsupported",
]

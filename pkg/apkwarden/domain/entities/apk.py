# apkwarden/domain/entities/apk.py
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Tuple

from apkwarden.domain.enums.entry_kind import EntryKind


@dataclass(frozen=True)
class ApkEntry:
    name: str
    kind: EntryKind
    data: bytes = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.data)


@dataclass(frozen=True)
class ApkArchive:
    """
    Opened APK container. Immutable; safe to share read-only across threads.
    Equality ignores ``path`` so two opens of the same bytes compare equal.
    """

    path: Path = field(compare=False)
    entries: Tuple[ApkEntry, ...]
    sha256: str

    def entries_of_kind(self, kind: EntryKind) -> list[ApkEntry]:
        return [e for e in self.entries if e.kind == kind]

    def entry(self, name: str) -> Optional[ApkEntry]:
        for e in self.entries:
            if e.name == name:
                return e
        return None

    @property
    def manifest(self) -> ApkEntry:
        return self.entries_of_kind(EntryKind.Manifest)[0]

    @property
    def dex_entries(self) -> list[ApkEntry]:
        return self.entries_of_kind(EntryKind.Dex)

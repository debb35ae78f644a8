# apkwarden/services/container/apk_reader.py
from __future__ import annotations

import io
import re
import struct
import zipfile
import zlib
from pathlib import Path
from typing import List, Optional

from apkwarden.common.logging import get_logger
from apkwarden.domain.entities.apk import ApkArchive, ApkEntry
from apkwarden.domain.enums.entry_kind import EntryKind
from apkwarden.domain.ports.hashing import HashingPort
from apkwarden.services.container.errors import (
    DuplicateManifest,
    MissingManifest,
    NoDexFound,
    NotAZip,
    TruncatedArchive,
    UnsupportedCompression,
    Zip64Unsupported,
)
from apkwarden.services.hashing.simple_hashing import SimpleHashing

logger = get_logger(__name__)

MANIFEST_NAME = "AndroidManifest.xml"
RESOURCE_TABLE_NAME = "resources.arsc"

_DEX_RE = re.compile(r"classes(\d*)\.dex")
_LOCAL_MAGIC = b"PK\x03\x04"
_EOCD_MAGIC = b"PK\x05\x06"
_ZIP64_LOCATOR_MAGIC = b"PK\x06\x07"
_SUPPORTED_METHODS = (zipfile.ZIP_STORED, zipfile.ZIP_DEFLATED)


def classify_entry(name: str) -> EntryKind:
    """Pure function of the entry name."""
    if name == MANIFEST_NAME:
        return EntryKind.Manifest
    if _DEX_RE.fullmatch(name):
        return EntryKind.Dex
    if name == RESOURCE_TABLE_NAME:
        return EntryKind.ResourceTable
    if name.startswith("res/layout") and name.endswith(".xml"):
        return EntryKind.LayoutXml
    return EntryKind.Other


def dex_number(name: str) -> Optional[int]:
    """classes.dex -> 1, classesN.dex -> N; None for non-DEX names."""
    m = _DEX_RE.fullmatch(name)
    if m is None:
        return None
    return int(m.group(1)) if m.group(1) else 1


def entries_of_kind(archive: ApkArchive, kind: EntryKind) -> List[ApkEntry]:
    return archive.entries_of_kind(kind)


def _check_zip64(data: bytes) -> None:
    eocd = data.rfind(_EOCD_MAGIC)
    if eocd >= 20 and data[eocd - 20 : eocd - 16] == _ZIP64_LOCATOR_MAGIC:
        raise Zip64Unsupported("ZIP64 archives are not supported", offset=eocd - 20)
    if eocd >= 0 and len(data) >= eocd + 22:
        entries, cd_size, cd_off = struct.unpack_from("<HII", data, eocd + 10)
        if entries == 0xFFFF or cd_size == 0xFFFFFFFF or cd_off == 0xFFFFFFFF:
            raise Zip64Unsupported("ZIP64 archives are not supported", offset=eocd)


def read_archive(data: bytes, path: Path, *, hasher: Optional[HashingPort] = None) -> ApkArchive:
    """Parse APK bytes already in memory. All entries are decompressed eagerly."""
    if not (data.startswith(_LOCAL_MAGIC) or data.startswith(_EOCD_MAGIC)):
        raise NotAZip(f"{path}: not a ZIP container (bad magic)", offset=0)
    _check_zip64(data)

    try:
        zf = zipfile.ZipFile(io.BytesIO(data))
    except zipfile.BadZipFile as e:
        raise TruncatedArchive(f"{path}: {e}") from e

    entries: List[ApkEntry] = []
    with zf:
        for info in zf.infolist():
            if info.is_dir():
                continue
            if info.compress_type not in _SUPPORTED_METHODS:
                raise UnsupportedCompression(info.filename, info.compress_type)
            try:
                payload = zf.read(info)
            except (zipfile.BadZipFile, zlib.error, EOFError) as e:
                raise TruncatedArchive(
                    f"cannot read entry: {e}", entry=info.filename, offset=info.header_offset
                ) from e
            entries.append(ApkEntry(info.filename, classify_entry(info.filename), payload))

    manifests = [e for e in entries if e.kind == EntryKind.Manifest]
    if not manifests:
        raise MissingManifest(f"{path}: no {MANIFEST_NAME} entry")
    if len(manifests) > 1:
        raise DuplicateManifest(f"{path}: {len(manifests)} {MANIFEST_NAME} entries")
    if not any(e.kind == EntryKind.Dex for e in entries):
        raise NoDexFound(f"{path}: no classes*.dex entry")

    digest = (hasher or SimpleHashing()).sha256_bytes(data)
    return ApkArchive(path=path, entries=tuple(entries), sha256=digest)


def dex_numbering_gaps(archive: ApkArchive) -> List[str]:
    """Names of DEX entries that break the classes, classes2, classes3, ... sequence."""
    numbers = sorted(n for e in archive.dex_entries if (n := dex_number(e.name)) is not None)
    expected = list(range(1, len(numbers) + 1))
    if numbers == expected:
        return []
    return [e.name for e in archive.dex_entries if dex_number(e.name) not in expected]


def open_apk(path: Path | str, *, hasher: Optional[HashingPort] = None) -> ApkArchive:
    path = Path(path)
    try:
        data = path.read_bytes()
    except FileNotFoundError as e:
        raise NotAZip(f"{path}: no such file") from e
    except IsADirectoryError as e:
        raise NotAZip(f"{path}: is a directory") from e
    archive = read_archive(data, path, hasher=hasher)
    logger.debug("opened %s: %d entries, sha256=%s", path, len(archive.entries), archive.sha256)
    return archive

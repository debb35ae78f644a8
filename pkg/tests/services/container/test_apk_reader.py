import hashlib
import re
import struct
import zipfile

import pytest
from hypothesis import given
from hypothesis import strategies as st

from apkwarden.domain.enums.entry_kind import EntryKind
from apkwarden.services.container import (
    DuplicateManifest,
    MissingManifest,
    NoDexFound,
    NotAZip,
    TruncatedArchive,
    UnsupportedCompression,
    Zip64Unsupported,
    classify_entry,
    open_apk,
)
from apkwarden.services.container.apk_reader import dex_numbering_gaps, read_archive
from apkwarden.services.hashing import SimpleHashing
from tests.builders.apk_builder import build_apk, write_apk

BASIC = [
    ("AndroidManifest.xml", b"\x03\x00\x08\x00manifest"),
    ("classes.dex", b"dex\n035\x00" + b"\x00" * 32),
    ("classes2.dex", b"dex\n035\x00" + b"\x01" * 32),
    ("res/layout/main.xml", b"layout"),
    ("resources.arsc", b"table"),
    ("assets/readme.txt", b"hello"),
]


@pytest.mark.parametrize(
    "name,kind",
    [
        ("AndroidManifest.xml", EntryKind.Manifest),
        ("classes.dex", EntryKind.Dex),
        ("classes12.dex", EntryKind.Dex),
        ("assets/classes.dex", EntryKind.Other),
        ("classes.dex.bak", EntryKind.Other),
        ("resources.arsc", EntryKind.ResourceTable),
        ("res/layout/activity_main.xml", EntryKind.LayoutXml),
        ("res/layout-land/activity_main.xml", EntryKind.LayoutXml),
        ("res/drawable/icon.xml", EntryKind.Other),
        ("assets/AndroidManifest.xml", EntryKind.Other),
    ],
)
def test_classify_entry(name, kind):
    assert classify_entry(name) == kind


_entry_names = st.one_of(
    st.text(alphabet="abclsx0123./_-", max_size=20),
    st.integers(0, 40).map(lambda n: f"classes{n or ''}.dex"),
    st.sampled_from(["AndroidManifest.xml", "resources.arsc", "res/layout/main.xml"]),
)


@given(name=_entry_names, folder=st.sampled_from(["", "assets/", "lib/x86/"]))
def test_classification_depends_only_on_the_name(name, folder):
    kind = classify_entry(folder + name)
    assert classify_entry(folder + name) == kind
    is_dex = re.fullmatch(r"classes\d*\.dex", folder + name) is not None
    assert (kind == EntryKind.Dex) == is_dex
    if folder:
        assert kind == EntryKind.Other


def test_open_apk_reads_and_classifies(tmp_path):
    path = write_apk(tmp_path / "basic.apk", BASIC)
    archive = open_apk(path)

    assert [e.name for e in archive.entries] == [n for n, _ in BASIC]
    assert archive.manifest.data == BASIC[0][1]
    assert [e.name for e in archive.dex_entries] == ["classes.dex", "classes2.dex"]
    assert [e.name for e in archive.entries_of_kind(EntryKind.LayoutXml)] == [
        "res/layout/main.xml"
    ]
    assert archive.entry("assets/readme.txt").data == b"hello"
    assert archive.entry("missing") is None
    assert archive.sha256 == hashlib.sha256(path.read_bytes()).hexdigest()


def test_open_is_deterministic(tmp_path):
    a = write_apk(tmp_path / "a.apk", BASIC)
    b = tmp_path / "copy.apk"
    b.write_bytes(a.read_bytes())
    # path does not take part in equality
    assert open_apk(a) == open_apk(b)


def test_stored_entries_are_supported(tmp_path):
    path = write_apk(tmp_path / "stored.apk", BASIC, compression=zipfile.ZIP_STORED)
    assert open_apk(path).entry("classes.dex").data == BASIC[1][1]


def test_not_a_zip(tmp_path):
    p = tmp_path / "x.apk"
    p.write_bytes(b"\x7fELF not an archive")
    with pytest.raises(NotAZip) as ei:
        open_apk(p)
    assert ei.value.offset == 0

    with pytest.raises(NotAZip):
        open_apk(tmp_path)


def test_missing_manifest():
    data = build_apk([("classes.dex", b"dex")])
    with pytest.raises(MissingManifest):
        read_archive(data, "x.apk")


def test_duplicate_manifest():
    data = build_apk(
        [("AndroidManifest.xml", b"a"), ("AndroidManifest.xml", b"b"), ("classes.dex", b"d")]
    )
    with pytest.raises(DuplicateManifest):
        read_archive(data, "x.apk")


def test_no_dex():
    data = build_apk([("AndroidManifest.xml", b"a"), ("lib/classes.dex", b"d")])
    with pytest.raises(NoDexFound):
        read_archive(data, "x.apk")


def test_truncated_archive():
    data = build_apk(BASIC)
    with pytest.raises(TruncatedArchive):
        read_archive(data[: len(data) // 2], "x.apk")


def test_corrupt_entry_payload_names_the_entry():
    data = bytearray(build_apk(BASIC, compression=zipfile.ZIP_STORED))
    # first local header: payload follows the name and extra field
    name_len, extra_len = struct.unpack_from("<HH", data, 26)
    start = 30 + name_len + extra_len
    data[start : start + 4] = b"\xff\xff\xff\xff"
    with pytest.raises(TruncatedArchive) as ei:
        read_archive(bytes(data), "x.apk")
    assert ei.value.entry == "AndroidManifest.xml"


def test_unsupported_compression():
    data = build_apk(BASIC, compression=zipfile.ZIP_BZIP2)
    with pytest.raises(UnsupportedCompression) as ei:
        read_archive(data, "x.apk")
    assert ei.value.method == zipfile.ZIP_BZIP2
    assert ei.value.entry == "AndroidManifest.xml"


def test_zip64_markers_rejected():
    data = bytearray(build_apk(BASIC))
    eocd = data.rfind(b"PK\x05\x06")
    data[eocd + 10 : eocd + 12] = b"\xff\xff"
    with pytest.raises(Zip64Unsupported):
        read_archive(bytes(data), "x.apk")


def test_dex_numbering_gaps():
    ok = read_archive(build_apk(BASIC), "ok.apk")
    assert dex_numbering_gaps(ok) == []

    gappy = read_archive(
        build_apk(
            [("AndroidManifest.xml", b"m"), ("classes.dex", b"1"), ("classes3.dex", b"3")]
        ),
        "gap.apk",
    )
    assert dex_numbering_gaps(gappy) == ["classes3.dex"]


def test_archive_digest_comes_from_the_hashing_port(tmp_path):
    path = write_apk(tmp_path / "app.apk", BASIC)
    hashed = []

    class Recording(SimpleHashing):
        def sha256_bytes(self, data: bytes) -> str:
            hashed.append(len(data))
            return super().sha256_bytes(data)

    archive = open_apk(path, hasher=Recording())
    assert hashed == [path.stat().st_size]
    assert archive.sha256 == hashlib.sha256(path.read_bytes()).hexdigest()

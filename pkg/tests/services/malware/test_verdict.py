import pytest

from apkwarden.domain.entities.trackers import MalwareVerdict
from apkwarden.domain.enums.verdict_source import VerdictSource
from apkwarden.services.malware import RemoteMalformedResponse, VerdictCache, verdict_from_report
from tests.services.malware.conftest import FETCHED, REPORT_3_OF_70, file_report

SHA = "ab" * 32


# ----- Test 1: folding a report ----
def test_report_3_of_70():
    v = verdict_from_report(SHA, REPORT_3_OF_70["data"], fetched_at=FETCHED)
    assert (v.engines_flagged, v.engines_total) == (3, 70)
    assert v.labels == ("Riskware.Sms", "Trojan.Spy")
    assert v.source == VerdictSource.Remote
    assert v.fetched_at == FETCHED
    assert v.flagged


def test_analysis_object_uses_stats_and_results():
    data = {
        "attributes": {
            "status": "completed",
            "stats": {"malicious": 0, "undetected": 2},
            "results": {f"E{i}": {"category": "undetected"} for i in range(5)},
        }
    }
    v = verdict_from_report(SHA, data, fetched_at=FETCHED)
    # engines that answered outnumber the stats
    assert (v.engines_flagged, v.engines_total) == (0, 5)
    assert v.labels == ()
    assert not v.flagged


@pytest.mark.parametrize(
    "data",
    [
        {},
        {"attributes": "x"},
        {"attributes": {"last_analysis_results": {}}},
        {"attributes": {"last_analysis_stats": {"malicious": "many"}}},
        {"attributes": {"last_analysis_stats": {"malicious": -1}}},
    ],
)
def test_malformed_report(data):
    with pytest.raises(RemoteMalformedResponse):
        verdict_from_report(SHA, data, fetched_at=FETCHED)


def test_verdict_invariants():
    with pytest.raises(ValueError):
        MalwareVerdict(SHA, engines_total=1, engines_flagged=2, source=VerdictSource.Remote)
    with pytest.raises(ValueError):
        MalwareVerdict(SHA, engines_total=3, source=VerdictSource.Stub)
    stub = MalwareVerdict.stub(SHA, error="offline")
    assert (stub.engines_total, stub.engines_flagged, stub.error) == (0, 0, "offline")


# ----- Test 2: verdict cache ----
def test_cache_roundtrip(tmp_path):
    cache = VerdictCache(tmp_path / "verdicts")
    assert cache.get(SHA) is None
    v = verdict_from_report(SHA, file_report(1, 0, 9)["data"], fetched_at=FETCHED)
    path = cache.put(v)
    assert path == tmp_path / "verdicts" / f"{SHA}.json"
    assert cache.get(SHA) == v


def test_cache_ignores_unreadable_entry(tmp_path):
    cache = VerdictCache(tmp_path)
    cache.path_for(SHA).write_text("{not json", encoding="utf-8")
    assert cache.get(SHA) is None


def test_cache_rejects_non_digest_keys(tmp_path):
    cache = VerdictCache(tmp_path)
    for bad in ("../../etc/passwd", SHA.upper(), SHA[:-1]):
        with pytest.raises(ValueError):
            cache.path_for(bad)


def test_cache_lock_per_digest(tmp_path):
    cache = VerdictCache(tmp_path)
    assert cache.lock_for(SHA) is cache.lock_for(SHA)
    assert cache.lock_for(SHA) is not cache.lock_for("cd" * 32)

import httpx
import pytest

from apkwarden.common.settings import MalwareConfig, Settings
from apkwarden.domain.enums.verdict_source import VerdictSource
from apkwarden.services.malware import (
    AuthFailed,
    HttpScanClient,
    MalwareScanner,
    NetworkUnavailable,
    QuotaExceeded,
    RemoteMalformedResponse,
    VerdictCache,
    malware_scanner_from_settings,
    scan_malware,
)
from tests.services.malware.conftest import (
    ENDPOINT,
    FETCHED,
    REPORT_3_OF_70,
    FakeService,
    respond,
)


def _client(service: FakeService) -> HttpScanClient:
    return HttpScanClient(ENDPOINT, "secret-key", transport=service.transport)


def _lookup(archive, body, status=200):
    return FakeService({f"GET /files/{archive.sha256}": respond(status, body)})


# ----- Test 1: hash lookup ----
def test_lookup_verdict_is_cached(tmp_path, archive):
    service = _lookup(archive, REPORT_3_OF_70)
    client = _client(service)
    cache = VerdictCache(tmp_path / "cache")

    first = scan_malware(archive, client, cache=cache, clock=lambda: FETCHED)
    assert first.source == VerdictSource.Remote
    assert (first.engines_flagged, first.engines_total) == (3, 70)
    assert cache.path_for(archive.sha256).is_file()
    assert service.seen[0].headers["x-apikey"] == "secret-key"
    assert service.seen[0].url.path == f"/api/v3/files/{archive.sha256}"

    second = scan_malware(archive, client, cache=cache)
    assert second.source == VerdictSource.Cache
    assert (second.engines_flagged, second.engines_total) == (3, 70)
    assert second.fetched_at == FETCHED
    assert client.requests == 1


def test_stub_mode_makes_no_requests(archive):
    warnings = []
    v = scan_malware(archive, None, warnings=warnings)
    assert v.source == VerdictSource.Stub
    assert (v.engines_total, v.engines_flagged, v.error) == (0, 0, None)
    assert warnings == []


def test_unknown_digest_without_upload(tmp_path, archive):
    service = FakeService({})
    cache = VerdictCache(tmp_path)
    warnings = []
    v = scan_malware(archive, _client(service), cache=cache, warnings=warnings)
    assert v.source == VerdictSource.Stub
    assert v.error == "digest unknown to the service; upload disabled"
    assert [r.method for r in service.seen] == ["GET"]
    assert warnings == []
    # stubs are never cached
    assert cache.get(archive.sha256) is None


# ----- Test 2: service failures become stub verdicts ----
@pytest.mark.parametrize(
    "status, raw, kind",
    [
        (401, None, "AuthFailed"),
        (403, None, "AuthFailed"),
        (429, None, "QuotaExceeded"),
        (503, None, "NetworkUnavailable"),
        (200, b"<html>busy</html>", "RemoteMalformedResponse"),
        (200, b'{"error": "x"}', "RemoteMalformedResponse"),
        (302, None, "RemoteMalformedResponse"),
    ],
)
def test_failures_degrade_to_stub(tmp_path, archive, status, raw, kind):
    service = FakeService({f"GET /files/{archive.sha256}": respond(status, raw=raw)})
    cache = VerdictCache(tmp_path)
    warnings = []
    v = scan_malware(archive, _client(service), cache=cache, warnings=warnings)
    assert v.source == VerdictSource.Stub
    assert v.error.startswith(f"{kind}: ")
    assert [w.code for w in warnings] == ["malware-unavailable"]
    assert "secret-key" not in v.error
    assert cache.get(archive.sha256) is None


def test_transport_error_is_network_unavailable(archive):
    def boom(request):
        raise httpx.ConnectError("connection refused", request=request)

    client = HttpScanClient(ENDPOINT, "k", transport=httpx.MockTransport(boom))
    with pytest.raises(NetworkUnavailable):
        client.lookup(archive.sha256)


@pytest.mark.parametrize(
    "status, exc", [(401, AuthFailed), (429, QuotaExceeded), (500, NetworkUnavailable)]
)
def test_client_raises_typed_errors(archive, status, exc):
    with pytest.raises(exc):
        _client(_lookup(archive, {}, status)).lookup(archive.sha256)


def test_client_requires_key():
    with pytest.raises(AuthFailed):
        HttpScanClient(ENDPOINT, "")


# ----- Test 3: upload and poll ----
def _upload_service(archive, polls):
    answers = iter(polls)
    return FakeService(
        {
            "POST /files": respond(200, {"data": {"type": "analysis", "id": "an-1"}}),
            "GET /analyses/an-1": lambda request: next(answers)(request),
        }
    )


def _analysis(status):
    attributes = {"status": status}
    if status == "completed":
        attributes["stats"] = {"malicious": 1, "undetected": 9}
        attributes["results"] = {"Alpha": {"category": "malicious", "result": "Sms.Fraud"}}
    return respond(200, {"data": {"type": "analysis", "attributes": attributes}})


def test_upload_then_poll_until_completed(tmp_path, archive):
    service = _upload_service(
        archive, [_analysis("queued"), _analysis("in-progress"), _analysis("completed")]
    )
    cache = VerdictCache(tmp_path)
    slept = []
    v = scan_malware(
        archive,
        _client(service),
        cache=cache,
        upload_enabled=True,
        poll_attempts=5,
        poll_interval=2.5,
        sleep=slept.append,
        clock=lambda: FETCHED,
    )
    assert v.source == VerdictSource.Remote
    assert (v.engines_flagged, v.engines_total, v.labels) == (1, 10, ("Sms.Fraud",))
    assert slept == [2.5, 2.5]
    assert [f"{r.method} {r.url.path}" for r in service.seen] == [
        f"GET /api/v3/files/{archive.sha256}",
        "POST /api/v3/files",
        "GET /api/v3/analyses/an-1",
        "GET /api/v3/analyses/an-1",
        "GET /api/v3/analyses/an-1",
    ]
    assert b"sample.apk" in service.seen[1].read()
    assert cache.get(archive.sha256) == v


def test_poll_gives_up(archive):
    service = _upload_service(archive, [_analysis("queued")] * 3)
    slept = []
    v = scan_malware(
        archive,
        _client(service),
        upload_enabled=True,
        poll_attempts=3,
        poll_interval=1.0,
        sleep=slept.append,
    )
    assert v.source == VerdictSource.Stub
    assert v.error == "analysis not finished after 3 polls"
    assert slept == [1.0, 1.0]


def test_upload_without_analysis_id(archive):
    service = FakeService({"POST /files": respond(200, {"data": {"type": "analysis"}})})
    warnings = []
    v = scan_malware(archive, _client(service), upload_enabled=True, warnings=warnings)
    assert v.error.startswith("RemoteMalformedResponse: ")
    assert len(warnings) == 1



def test_vanished_apk_degrades_to_stub(archive):
    archive.path.unlink()
    warnings = []
    v = scan_malware(archive, _client(FakeService({})), upload_enabled=True, warnings=warnings)
    assert v.source == VerdictSource.Stub
    assert v.error.startswith("FileNotFoundError: ")
    assert [w.code for w in warnings] == ["malware-unavailable"]


def test_unwritable_cache_keeps_the_remote_verdict(tmp_path, archive):
    blocked = tmp_path / "cache"
    blocked.write_text("not a directory", encoding="utf-8")
    warnings = []
    v = scan_malware(
        archive,
        _client(_lookup(archive, REPORT_3_OF_70)),
        cache=VerdictCache(blocked),
        warnings=warnings,
    )
    assert v.source == VerdictSource.Remote
    assert (v.engines_flagged, v.engines_total) == (3, 70)
    assert [w.code for w in warnings] == ["malware-cache-unwritable"]

# ----- Test 4: scanner from settings ----
def test_scanner_stub_by_default():
    scanner = malware_scanner_from_settings(Settings(scan_api_key=None))
    assert scanner.client is None and scanner.unavailable is None


def test_scanner_enabled_without_key(tmp_path, archive):
    cfg = Settings(scan_api_key=None, malware=MalwareConfig(mode="on", cache_dir=tmp_path))
    scanner = malware_scanner_from_settings(cfg)
    assert scanner.client is None
    warnings = []
    v = scanner.verdict(archive, warnings)
    assert v.source == VerdictSource.Stub
    assert v.error == "AuthFailed: SCAN_API_KEY is not set"
    assert [w.code for w in warnings] == ["malware-unavailable"]


def test_scanner_enabled_with_key(tmp_path, archive):
    service = _lookup(archive, REPORT_3_OF_70)
    cfg = Settings(
        scan_api_key="k-1",
        malware=MalwareConfig(
            mode="on", endpoint=ENDPOINT, cache_dir=tmp_path / "v", poll_attempts=2
        ),
    )
    scanner = malware_scanner_from_settings(cfg, transport=service.transport)
    assert isinstance(scanner, MalwareScanner)
    assert scanner.poll_attempts == 2
    assert scanner.cache.root == tmp_path / "v"

    assert scanner.verdict(archive).source == VerdictSource.Remote
    assert scanner.verdict(archive).source == VerdictSource.Cache
    assert service.seen[0].headers["x-apikey"] == "k-1"

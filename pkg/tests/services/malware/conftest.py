# tests/services/malware/conftest.py
from __future__ import annotations

import hashlib
import json
from datetime import datetime, timezone
from typing import Any, Callable, Dict, List, Optional

import httpx
import pytest

from apkwarden.domain.entities.apk import ApkArchive

ENDPOINT = "https://scan.test/api/v3"
FETCHED = datetime(2024, 5, 1, 12, 0, tzinfo=timezone.utc)


def file_report(malicious: int, suspicious: int, clean: int, **results: Dict[str, Any]):
    """A file object as returned by the hash lookup."""
    return {
        "data": {
            "type": "file",
            "attributes": {
                "last_analysis_stats": {
                    "malicious": malicious,
                    "suspicious": suspicious,
                    "undetected": clean,
                },
                "last_analysis_results": results,
            },
        }
    }


# 3 of 70 engines flag the file
REPORT_3_OF_70 = file_report(
    2,
    1,
    67,
    Alpha={"category": "malicious", "result": "Trojan.Spy"},
    Beta={"category": "suspicious", "result": "Riskware.Sms"},
    Gamma={"category": "malicious", "result": "Trojan.Spy"},
    Delta={"category": "undetected", "result": None},
)


class FakeService:
    """Routes requests of the malware client to canned responses and records them."""

    def __init__(self, routes: Dict[str, Callable[[httpx.Request], httpx.Response]]):
        self.routes = routes
        self.seen: List[httpx.Request] = []

    def __call__(self, request: httpx.Request) -> httpx.Response:
        self.seen.append(request)
        key = f"{request.method} {request.url.path.removeprefix('/api/v3')}"
        handler = self.routes.get(key)
        if handler is None:
            return httpx.Response(404, json={"error": {"code": "NotFoundError"}})
        return handler(request)

    @property
    def transport(self) -> httpx.MockTransport:
        return httpx.MockTransport(self)


def respond(status: int, body: Optional[Any] = None, *, raw: Optional[bytes] = None):
    def _handler(request: httpx.Request) -> httpx.Response:
        if raw is not None:
            return httpx.Response(status, content=raw)
        return httpx.Response(status, content=json.dumps(body or {}).encode())

    return _handler


@pytest.fixture()
def archive(tmp_path) -> ApkArchive:
    data = b"PK\x05\x06" + b"\x00" * 18
    path = tmp_path / "sample.apk"
    path.write_bytes(data)
    return ApkArchive(path=path, entries=(), sha256=hashlib.sha256(data).hexdigest())

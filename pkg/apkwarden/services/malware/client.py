# apkwarden/services/malware/client.py
from __future__ import annotations

from typing import Any, Mapping, Optional

import httpx

from apkwarden.common.logging import get_logger
from apkwarden.domain.ports.malware import MalwareScanPort
from apkwarden.services.malware.errors import (
    AuthFailed,
    NetworkUnavailable,
    QuotaExceeded,
    RemoteMalformedResponse,
)

log = get_logger(__name__)


class HttpScanClient(MalwareScanPort):
    """
    REST client for a VirusTotal v3 style service:

    - ``GET  {endpoint}/files/{sha256}``   -> file object, 404 when unknown
    - ``POST {endpoint}/files``            -> analysis descriptor (multipart upload)
    - ``GET  {endpoint}/analyses/{id}``    -> analysis object, ``status`` queued|completed

    The API key travels in the ``x-apikey`` header and is never logged. ``transport`` lets
    tests plug in ``httpx.MockTransport``.
    """

    def __init__(
        self,
        endpoint: str,
        api_key: str,
        *,
        timeout: float = 30.0,
        transport: Optional[httpx.BaseTransport] = None,
    ):
        if not api_key:
            raise AuthFailed("no API key configured for the malware scanning service")
        self.endpoint = endpoint.rstrip("/")
        self._client = httpx.Client(
            base_url=self.endpoint,
            headers={"x-apikey": api_key, "accept": "application/json"},
            timeout=timeout,
            transport=transport,
        )
        self.requests = 0

    def close(self) -> None:
        self._client.close()

    def __enter__(self) -> "HttpScanClient":
        return self

    def __exit__(self, *exc: object) -> None:
        self.close()

    # ---- transport -----------------------------------------------------------------------
    def _send(self, method: str, url: str, **kwargs: Any) -> httpx.Response:
        self.requests += 1
        try:
            resp = self._client.request(method, url, **kwargs)
        except httpx.TimeoutException as e:
            raise NetworkUnavailable(f"{method} {url} timed out: {type(e).__name__}") from None
        except httpx.TransportError as e:
            raise NetworkUnavailable(f"{method} {url} failed: {type(e).__name__}") from None
        if resp.status_code in (401, 403):
            raise AuthFailed(f"{method} {url}: HTTP {resp.status_code}")
        if resp.status_code == 429:
            raise QuotaExceeded(f"{method} {url}: HTTP 429")
        if resp.status_code >= 500:
            raise NetworkUnavailable(f"{method} {url}: HTTP {resp.status_code}")
        return resp

    @staticmethod
    def _json(resp: httpx.Response) -> Mapping[str, Any]:
        try:
            body = resp.json()
        except ValueError:
            raise RemoteMalformedResponse(f"HTTP {resp.status_code}: body is not JSON") from None
        if not isinstance(body, Mapping) or not isinstance(body.get("data"), Mapping):
            raise RemoteMalformedResponse(f"HTTP {resp.status_code}: no 'data' object")
        return body["data"]

    # ---- port ----------------------------------------------------------------------------
    def lookup(self, sha256: str) -> Optional[Mapping[str, Any]]:
        resp = self._send("GET", f"/files/{sha256}")
        if resp.status_code == 404:
            return None
        if resp.status_code != 200:
            raise RemoteMalformedResponse(f"lookup: unexpected HTTP {resp.status_code}")
        return self._json(resp)

    def upload(self, data: bytes, filename: str) -> str:
        resp = self._send("POST", "/files", files={"file": (filename, data)})
        if resp.status_code not in (200, 201):
            raise RemoteMalformedResponse(f"upload: unexpected HTTP {resp.status_code}")
        analysis_id = self._json(resp).get("id")
        if not isinstance(analysis_id, str) or not analysis_id:
            raise RemoteMalformedResponse("upload: response carries no analysis id")
        return analysis_id

    def poll(self, analysis_id: str) -> Optional[Mapping[str, Any]]:
        resp = self._send("GET", f"/analyses/{analysis_id}")
        if resp.status_code != 200:
            raise RemoteMalformedResponse(f"poll: unexpected HTTP {resp.status_code}")
        data = self._json(resp)
        status = (data.get("attributes") or {}).get("status")
        if status == "completed":
            return data
        return None

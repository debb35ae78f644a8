# apkwarden/services/malware/service.py
from __future__ import annotations

import time
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from typing import Callable, List, Optional

import httpx

from apkwarden.common.logging import get_logger
from apkwarden.common.settings import Settings
from apkwarden.domain.entities.apk import ApkArchive
from apkwarden.domain.entities.trackers import MalwareVerdict
from apkwarden.domain.entities.warnings import ScanWarning
from apkwarden.domain.enums.verdict_source import VerdictSource
from apkwarden.domain.ports.malware import MalwareScanPort
from apkwarden.services.malware.cache import VerdictCache
from apkwarden.services.malware.client import HttpScanClient
from apkwarden.services.malware.errors import MalwareClientError
from apkwarden.services.malware.verdict import verdict_from_report

log = get_logger(__name__)


def _utcnow() -> datetime:
    return datetime.now(timezone.utc)


def _remote_verdict(
    archive: ApkArchive,
    client: MalwareScanPort,
    *,
    upload_enabled: bool,
    poll_attempts: int,
    poll_interval: float,
    sleep: Callable[[float], None],
    clock: Callable[[], datetime],
) -> MalwareVerdict:
    sha = archive.sha256
    report = client.lookup(sha)
    if report is not None:
        return verdict_from_report(sha, report, fetched_at=clock())
    if not upload_enabled:
        return MalwareVerdict.stub(sha, error="digest unknown to the service; upload disabled")

    analysis_id = client.upload(archive.path.read_bytes(), archive.path.name)
    log.info("uploaded %s for analysis", archive.path.name)
    for attempt in range(poll_attempts):
        if attempt:
            sleep(poll_interval)
        finished = client.poll(analysis_id)
        if finished is not None:
            return verdict_from_report(sha, finished, fetched_at=clock())
    return MalwareVerdict.stub(sha, error=f"analysis not finished after {poll_attempts} polls")


def _unavailable(
    archive: ApkArchive, reason: str, warnings: Optional[List[ScanWarning]]
) -> MalwareVerdict:
    log.warning("malware scan unavailable for %s: %s", archive.path.name, reason)
    if warnings is not None:
        warnings.append(ScanWarning(code="malware-unavailable", message=reason))
    return MalwareVerdict.stub(archive.sha256, error=reason)


def scan_malware(
    archive: ApkArchive,
    client: Optional[MalwareScanPort],
    *,
    cache: Optional[VerdictCache] = None,
    upload_enabled: bool = False,
    poll_attempts: int = 10,
    poll_interval: float = 15.0,
    warnings: Optional[List[ScanWarning]] = None,
    sleep: Callable[[float], None] = time.sleep,
    clock: Callable[[], datetime] = _utcnow,
) -> MalwareVerdict:
    """
    Malware verdict for ``archive``. ``client=None`` is stub mode: no cache, no network.

    Order: disk cache, hash lookup, then (only when enabled) upload and poll. Remote verdicts
    are cached. Client and I/O failures never propagate: they become a stub verdict with the
    error recorded plus a ``malware-unavailable`` warning. A verdict that cannot be cached is
    still returned, with a ``malware-cache-unwritable`` warning.
    """
    sha = archive.sha256
    if client is None:
        return MalwareVerdict.stub(sha)

    lock = cache.lock_for(sha) if cache is not None else None
    if lock is not None:
        lock.acquire()
    try:
        if cache is not None:
            hit = cache.get(sha)
            if hit is not None and hit.source != VerdictSource.Stub:
                return replace(hit, source=VerdictSource.Cache)
        try:
            verdict = _remote_verdict(
                archive,
                client,
                upload_enabled=upload_enabled,
                poll_attempts=poll_attempts,
                poll_interval=poll_interval,
                sleep=sleep,
                clock=clock,
            )
        except MalwareClientError as e:
            return _unavailable(archive, f"{e.kind}: {e.message}", warnings)
        except OSError as e:
            # the APK could not be read back for upload
            return _unavailable(archive, f"{type(e).__name__}: {e}", warnings)
        if cache is not None and verdict.source == VerdictSource.Remote:
            try:
                cache.put(verdict)
            except OSError as e:
                log.warning("verdict for %s not cached: %s", archive.path.name, e)
                if warnings is not None:
                    warnings.append(ScanWarning("malware-cache-unwritable", str(e)))
        return verdict
    finally:
        if lock is not None:
            lock.release()


@dataclass
class MalwareScanner:
    """
    Per-run malware configuration shared by every scan of a corpus. No client means stub
    mode; ``unavailable`` records why an enabled client could not be built.
    """

    client: Optional[MalwareScanPort] = None
    cache: Optional[VerdictCache] = None
    upload_enabled: bool = False
    poll_attempts: int = 10
    poll_interval: float = 15.0
    unavailable: Optional[str] = None

    def verdict(
        self, archive: ApkArchive, warnings: Optional[List[ScanWarning]] = None
    ) -> MalwareVerdict:
        if self.unavailable is not None:
            if warnings is not None:
                warnings.append(ScanWarning("malware-unavailable", self.unavailable))
            return MalwareVerdict.stub(archive.sha256, error=self.unavailable)
        return scan_malware(
            archive,
            self.client,
            cache=self.cache,
            upload_enabled=self.upload_enabled,
            poll_attempts=self.poll_attempts,
            poll_interval=self.poll_interval,
            warnings=warnings,
        )


def malware_scanner_from_settings(
    settings: Settings, *, transport: Optional[httpx.BaseTransport] = None
) -> MalwareScanner:
    cfg = settings.malware
    if not settings.malware_enabled:
        return MalwareScanner()
    if not settings.scan_api_key:
        log.warning("malware scanning enabled but SCAN_API_KEY is not set")
        return MalwareScanner(unavailable="AuthFailed: SCAN_API_KEY is not set")
    client = HttpScanClient(
        cfg.endpoint, settings.scan_api_key, timeout=cfg.timeout_sec, transport=transport
    )
    return MalwareScanner(
        client=client,
        cache=VerdictCache(cfg.cache_dir),
        upload_enabled=cfg.upload_enabled,
        poll_attempts=cfg.poll_attempts,
        poll_interval=cfg.poll_interval_sec,
    )

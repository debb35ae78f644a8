from apkwarden.services.malware.cache import VerdictCache
from apkwarden.services.malware.client import HttpScanClient
from apkwarden.services.malware.errors import (
    AuthFailed,
    MalwareClientError,
    NetworkUnavailable,
    QuotaExceeded,
    RemoteMalformedResponse,
)
from apkwarden.services.malware.service import (
    MalwareScanner,
    malware_scanner_from_settings,
    scan_malware,
)
from apkwarden.services.malware.verdict import verdict_from_report

__all__ = [
    "HttpScanClient",
    "VerdictCache",
    "MalwareScanner",
    "malware_scanner_from_settings",
    "scan_malware",
    "verdict_from_report",
    "MalwareClientError",
    "NetworkUnavailable",
    "AuthFailed",
    "QuotaExceeded",
    "RemoteMalformedResponse",
]

from __future__ import annotations

from apkwarden.domain.errors import ScanError


class MalwareClientError(ScanError):
    """Scanning-service failure. Never fatal: the scan continues with a stub verdict."""


class NetworkUnavailable(MalwareClientError):
    pass


class AuthFailed(MalwareClientError):
    pass


class QuotaExceeded(MalwareClientError):
    pass


class RemoteMalformedResponse(MalwareClientError):
    pass

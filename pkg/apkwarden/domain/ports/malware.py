from __future__ import annotations

from typing import Any, Mapping, Optional, Protocol, runtime_checkable


@runtime_checkable
class MalwareScanPort(Protocol):
    """
    Hash-lookup / upload / poll REST shape of a multi-engine scanning service.
    Implementations raise the malware client errors on transport/auth/quota/format problems.
    """

    def lookup(self, sha256: str) -> Optional[Mapping[str, Any]]:
        """Report for a known digest, or None when the service has never seen it."""
        ...

    def upload(self, data: bytes, filename: str) -> str:
        """Submit the file; returns an analysis id."""
        ...

    def poll(self, analysis_id: str) -> Optional[Mapping[str, Any]]:
        """Finished analysis report, or None while still queued."""
        ...

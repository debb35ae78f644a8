from __future__ import annotations

import hashlib

from apkwarden.domain.ports.hashing import HashingPort


class SimpleHashing(HashingPort):
    """SHA-256 of an APK already read into memory (the ZIP reader needs the bytes anyway)."""

    def sha256_bytes(self, data: bytes) -> str:
        return hashlib.sha256(data).hexdigest()

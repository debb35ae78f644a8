# apkwarden/services/malware/cache.py
from __future__ import annotations

import re
import threading
from pathlib import Path
from typing import Dict, Optional

from pydantic import ValidationError

from apkwarden.common.logging import get_logger
from apkwarden.domain.entities.trackers import MalwareVerdict
from apkwarden.services.mappers.report import from_verdict_schema, to_verdict_schema
from apkwarden.services.schemas.report import MalwareVerdictSchema

log = get_logger(__name__)

_HEX64 = re.compile(r"^[0-9a-f]{64}$")


class VerdictCache:
    """
    One JSON verdict per digest under ``root``. A per-digest lock (handed out under a
    table lock) keeps at most one lookup in flight for any digest.
    """

    def __init__(self, root: Path | str):
        self.root = Path(root)
        self._table_lock = threading.Lock()
        self._locks: Dict[str, threading.Lock] = {}

    def lock_for(self, sha256: str) -> threading.Lock:
        with self._table_lock:
            lock = self._locks.get(sha256)
            if lock is None:
                lock = self._locks[sha256] = threading.Lock()
            return lock

    def path_for(self, sha256: str) -> Path:
        if not _HEX64.match(sha256):
            raise ValueError(f"not a sha256 hex digest: {sha256!r}")
        return self.root / f"{sha256}.json"

    def get(self, sha256: str) -> Optional[MalwareVerdict]:
        p = self.path_for(sha256)
        if not p.is_file():
            return None
        try:
            return from_verdict_schema(MalwareVerdictSchema.model_validate_json(p.read_bytes()))
        except (OSError, ValidationError, ValueError) as e:
            log.warning("ignoring unreadable cached verdict %s: %s", p.name, type(e).__name__)
            return None

    def put(self, verdict: MalwareVerdict) -> Path:
        p = self.path_for(verdict.sha256)
        p.parent.mkdir(parents=True, exist_ok=True)
        tmp = p.with_suffix(".tmp")
        tmp.write_text(to_verdict_schema(verdict).model_dump_json(indent=2), encoding="utf-8")
        tmp.replace(p)
        return p

from apkwarden.domain.ports.hashing import HashingPort
from apkwarden.domain.ports.malware import MalwareScanPort

__all__ = ["HashingPort", "MalwareScanPort"]

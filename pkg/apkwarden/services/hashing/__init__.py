from apkwarden.services.hashing.simple_hashing import SimpleHashing

__all__ = ["SimpleHashing"]

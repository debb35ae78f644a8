from apkwarden.domain.dataclasses.runs import BaseRun, CorpusRun, ScanRun

__all__ = ["BaseRun", "ScanRun", "CorpusRun"]

from apkwarden.services.scan.corpus import CORPUS_FILE, CorpusResult, discover_apks, scan_corpus
from apkwarden.services.scan.data import AnalysisData, load_analysis_data, seed_keywords
from apkwarden.services.scan.keywords import keywords_build
from apkwarden.services.scan.service import ParsedApk, parse_apk, scan_apk
from apkwarden.services.scan.stats import (
    compute_corpus_stats,
    source_sink_matrix,
    stats_from_report_files,
)

__all__ = [
    "AnalysisData",
    "CORPUS_FILE",
    "CorpusResult",
    "ParsedApk",
    "compute_corpus_stats",
    "discover_apks",
    "keywords_build",
    "load_analysis_data",
    "parse_apk",
    "scan_apk",
    "scan_corpus",
    "seed_keywords",
    "source_sink_matrix",
    "stats_from_report_files",
]

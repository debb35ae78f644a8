# apkwarden/services/scan/corpus.py
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, List, Optional, Tuple

from apkwarden.common.concurrency import ThreadManager
from apkwarden.common.logging import get_logger
from apkwarden.common.naming import report_file_name
from apkwarden.common.settings import AnalysisConfig
from apkwarden.domain.dataclasses.runs import CorpusRun
from apkwarden.domain.errors import NoApksFound
from apkwarden.domain.policies.exit_status import EXIT_OK, EXIT_TOOL_ERROR
from apkwarden.services.malware.service import MalwareScanner
from apkwarden.services.mappers.report import to_error_detail, to_report_schema
from apkwarden.services.scan.data import AnalysisData
from apkwarden.services.scan.service import scan_apk
from apkwarden.services.scan.stats import compute_corpus_stats
from apkwarden.services.schemas.report import (
    CorpusFailureSchema,
    CorpusStatsSchema,
    ErrorDetailSchema,
    ScanReportSchema,
)

log = get_logger(__name__)

CORPUS_FILE = "corpus.json"

# (input path, report or None, error or None)
_Outcome = Tuple[Path, Optional[ScanReportSchema], Optional[ErrorDetailSchema]]


def discover_apks(paths: Iterable[Path | str]) -> List[Path]:
    """Expand directories to the ``*.apk`` files below them; keep files as given."""
    found: List[Path] = []
    for raw in paths:
        p = Path(raw)
        if p.is_dir():
            found.extend(sorted(q for q in p.rglob("*.apk") if q.is_file()))
        elif p.is_file():
            found.append(p)
        else:
            log.warning("skipping %s: no such file or directory", p)
    if not found:
        raise NoApksFound("no APKs found")
    return list(dict.fromkeys(found))


@dataclass
class CorpusResult:
    stats: CorpusStatsSchema
    out_dir: Path
    run: CorpusRun = field(default_factory=CorpusRun)
    exit_code: int = EXIT_OK


def write_json(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text + "\n", encoding="utf-8")
    return path


def scan_corpus(
    paths: Iterable[Path | str],
    data: AnalysisData,
    out_dir: Path | str,
    *,
    analysis: Optional[AnalysisConfig] = None,
    malware: Optional[MalwareScanner] = None,
    jobs: int = 4,
    max_queue: Optional[int] = None,
    deterministic: bool = False,
) -> CorpusResult:
    """
    Scan every APK under ``paths`` in parallel, write one JSON report per app plus
    ``corpus.json`` into ``out_dir``. A failing app is recorded and the corpus continues.
    Output does not depend on scheduling: results are gathered in input order.
    """
    apks = discover_apks(paths)
    out = Path(out_dir)
    run = CorpusRun(planned=len(apks))
    run.start()

    def _one(apk: Path) -> _Outcome:
        try:
            report = scan_apk(apk, data, analysis=analysis, malware=malware)
        except Exception as e:  # one bad app never stops the corpus
            log.warning("scan failed for %s: %s", apk, e)
            return apk, None, to_error_detail(e)
        return apk, to_report_schema(report, deterministic=deterministic), None

    with ThreadManager[Path, _Outcome](
        name="corpus", max_workers=jobs, max_queue=max_queue
    ) as pool:
        outcomes = pool.map(_one, apks)

    reports: List[ScanReportSchema] = []
    names: List[str] = []
    failures: List[CorpusFailureSchema] = []
    exit_code = EXIT_OK
    for apk, schema, error in outcomes:
        if schema is None:
            run.failed += 1
            run.add_error(f"{apk}: {error.message if error else 'unknown error'}")
            failures.append(
                CorpusFailureSchema(
                    path=str(apk),
                    error=error or ErrorDetailSchema(type="Error", message="unknown"),
                )
            )
            continue
        run.scanned += 1
        name = report_file_name(apk.stem, schema.apk.sha256, taken=names)
        write_json(out / name, schema.model_dump_json(indent=2))
        reports.append(schema)
        names.append(name)
        exit_code = max(exit_code, schema.summary.exit_code)

    stats = compute_corpus_stats(reports, report_names=names, failures=failures)
    write_json(out / CORPUS_FILE, stats.model_dump_json(indent=2))
    run.stop()
    if not reports:
        exit_code = EXIT_TOOL_ERROR
    log.info(
        "corpus: %d scanned, %d failed, %.2fs", run.scanned, run.failed, run.duration_sec
    )
    return CorpusResult(stats=stats, out_dir=out, run=run, exit_code=exit_code)

# apkwarden/services/cli/main.py
from __future__ import annotations

import functools
from pathlib import Path
from typing import Any, Callable, Optional

import click
from rich.console import Console

from apkwarden import __version__
from apkwarden.common.logging import get_logger, set_level
from apkwarden.common.settings import PACKAGE_DATA, Settings, get_settings
from apkwarden.domain.errors import NoApksFound, ScanError
from apkwarden.domain.policies.exit_status import EXIT_OK, EXIT_TOOL_ERROR
from apkwarden.services.cli.render import render_corpus, render_keywords, render_report
from apkwarden.services.malware import malware_scanner_from_settings
from apkwarden.services.mappers.report import to_error_report, to_report_schema
from apkwarden.services.scan import keywords_build, load_analysis_data, scan_apk, scan_corpus
from apkwarden.services.scan.corpus import write_json

log = get_logger(__name__)

console = Console()
err_console = Console(stderr=True)

_FILE = click.Path(dir_okay=False, path_type=Path)
_EXISTING_FILE = click.Path(exists=True, dir_okay=False, path_type=Path)


def _settings(
    *,
    rules: Optional[Path] = None,
    sources_sinks: Optional[Path] = None,
    keywords: Optional[Path] = None,
    trackers: Optional[Path] = None,
    entry_points: Optional[Path] = None,
    framework_types: Optional[Path] = None,
    malware: Optional[str] = None,
) -> Settings:
    """Process settings with the per-invocation flags applied on top."""
    base = get_settings()
    files = {
        "rules": rules,
        "sources_sinks": sources_sinks,
        "keywords": keywords,
        "trackers": trackers,
        "entry_points": entry_points,
        "framework_types": framework_types,
    }
    update: dict[str, Any] = {
        "data": base.data.model_copy(update={k: v for k, v in files.items() if v is not None})
    }
    if malware is not None:
        update["malware"] = base.malware.model_copy(update={"mode": malware})
    return base.model_copy(update=update)


def _data_options(fn: Callable) -> Callable:
    """Flags shared by ``scan`` and ``corpus``."""
    options = [
        click.option("--rules", type=_EXISTING_FILE, help="Rule set (YAML)."),
        click.option("--sources-sinks", type=_EXISTING_FILE, help="Taint source/sink list."),
        click.option("--keywords", type=_EXISTING_FILE, help="Keyword database export (JSON)."),
        click.option("--trackers", type=_EXISTING_FILE, help="Tracker signatures (YAML)."),
        click.option("--entry-points", type=_EXISTING_FILE, help="Entry-point policy (YAML)."),
        click.option(
            "--framework-types", type=_EXISTING_FILE, help="Platform class supertypes (YAML)."
        ),
        click.option(
            "--malware",
            type=click.Choice(["stub", "on"]),
            default=None,
            help="Malware scanning service; 'on' needs SCAN_API_KEY.",
        ),
        click.option(
            "--deterministic", is_flag=True, help="Zero timestamps so reruns are byte-identical."
        ),
        click.option(
            "--format",
            "fmt",
            type=click.Choice(["json", "text"]),
            default="json",
            show_default=True,
            help="Console output format; files are always JSON.",
        ),
    ]
    return functools.reduce(lambda f, opt: opt(f), reversed(options), fn)


def _fail(message: str, code: int = EXIT_TOOL_ERROR) -> None:
    err_console.print(f"[bold red][Error][/bold red] {message}")
    raise SystemExit(code)


@click.group()
@click.version_option(__version__, prog_name="apkwarden")
@click.option("--verbose", "-v", is_flag=True, help="Debug logging.")
def cli(verbose: bool) -> None:
    """apkwarden - static security and privacy scanner for Android apps."""
    set_level("DEBUG" if verbose else get_settings().log_level)


@cli.command()
@click.argument("apk", type=_FILE)
@_data_options
@click.option("--out", type=_FILE, help="Write the JSON report here instead of stdout.")
def scan(
    apk: Path,
    rules: Optional[Path],
    sources_sinks: Optional[Path],
    keywords: Optional[Path],
    trackers: Optional[Path],
    entry_points: Optional[Path],
    framework_types: Optional[Path],
    malware: Optional[str],
    deterministic: bool,
    fmt: str,
    out: Optional[Path],
) -> None:
    """Scan one APK. Exit status: 0 clean, 1 Warning, 2 High, 3 tool or parse error."""
    cfg = _settings(
        rules=rules,
        sources_sinks=sources_sinks,
        keywords=keywords,
        trackers=trackers,
        entry_points=entry_points,
        framework_types=framework_types,
        malware=malware,
    )
    try:
        data = load_analysis_data(cfg.data)
        scanner = malware_scanner_from_settings(cfg)
        report = scan_apk(apk, data, analysis=cfg.analysis, malware=scanner)
    except Exception as e:  # structured error report instead of a traceback
        if not isinstance(e, ScanError):
            log.debug("unexpected failure scanning %s", apk, exc_info=True)
        error = to_error_report(str(apk), e).model_dump_json(indent=2)
        if out is not None:
            write_json(out, error)
        else:
            click.echo(error)
        _fail(f"{apk}: {e}")
        return

    schema = to_report_schema(report, deterministic=deterministic)
    payload = schema.model_dump_json(indent=2)
    if out is not None:
        write_json(out, payload)
    if fmt == "text":
        render_report(schema, console)
    elif out is None:
        click.echo(payload)
    raise SystemExit(schema.summary.exit_code)


@cli.command()
@click.argument("paths", nargs=-1, required=True, type=click.Path(path_type=Path))
@_data_options
@click.option(
    "--out",
    "out_dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=Path("apkwarden-reports"),
    show_default=True,
    help="Directory for per-app reports and corpus.json.",
)
@click.option("--jobs", "-j", type=click.IntRange(1, 64), default=None, help="Parallel scans.")
def corpus(
    paths: tuple[Path, ...],
    rules: Optional[Path],
    sources_sinks: Optional[Path],
    keywords: Optional[Path],
    trackers: Optional[Path],
    entry_points: Optional[Path],
    framework_types: Optional[Path],
    malware: Optional[str],
    deterministic: bool,
    fmt: str,
    out_dir: Path,
    jobs: Optional[int],
) -> None:
    """Scan every APK under PATHS and write per-app reports plus corpus statistics."""
    cfg = _settings(
        rules=rules,
        sources_sinks=sources_sinks,
        keywords=keywords,
        trackers=trackers,
        entry_points=entry_points,
        framework_types=framework_types,
        malware=malware,
    )
    try:
        data = load_analysis_data(cfg.data)
        result = scan_corpus(
            paths,
            data,
            out_dir,
            analysis=cfg.analysis,
            malware=malware_scanner_from_settings(cfg),
            jobs=jobs or cfg.concurrency.corpus_jobs,
            max_queue=cfg.concurrency.max_queue,
            deterministic=deterministic,
        )
    except NoApksFound as e:
        _fail(e.message)
        return
    except ScanError as e:
        _fail(str(e))
        return

    if fmt == "text":
        render_corpus(result.stats, console)
    else:
        click.echo(result.stats.model_dump_json(indent=2))
    raise SystemExit(result.exit_code)


@cli.group()
def keywords() -> None:
    """PII keyword database tools."""


@keywords.command("build")
@click.option("--embeddings", required=True, type=_FILE, help="word2vec text embeddings.")
@click.option(
    "--seeds", type=_FILE, default=PACKAGE_DATA / "seeds.txt", show_default=True, help="Seeds."
)
@click.option("-k", "k", type=click.IntRange(min=0), default=None, help="Synonyms per seed.")
@click.option("--allow", type=_EXISTING_FILE, help="Reviewed words to accept (others rejected).")
@click.option("--deny", type=_EXISTING_FILE, help="Reviewed words to reject.")
@click.option(
    "--out", type=_FILE, default=Path("keywords.json"), show_default=True, help="Export file."
)
def keywords_build_cmd(
    embeddings: Path,
    seeds: Path,
    k: Optional[int],
    allow: Optional[Path],
    deny: Optional[Path],
    out: Path,
) -> None:
    """Expand the seed keywords with embedding neighbours for manual review."""
    k = get_settings().analysis.expansion_k if k is None else k
    try:
        db = keywords_build(embeddings, seeds, k=k, allow=allow, deny=deny, out=out)
    except ScanError as e:
        _fail(str(e))
        return
    render_keywords(db, console)
    for w in db.warnings:
        err_console.print(f"[yellow]warning {w.code}:[/yellow] {w.message}")
    err_console.print(f"[green]wrote {out}[/green]")
    raise SystemExit(EXIT_OK)


if __name__ == "__main__":
    cli()

# apkwarden/services/cli/render.py
from __future__ import annotations

from rich.console import Console
from rich.table import Table

from apkwarden.domain.entities.pii import KeywordDatabase
from apkwarden.domain.enums.rule_category import AssessmentCategory, RuleCategory
from apkwarden.services.schemas.report import (
    CorpusStatsSchema,
    FindingSchema,
    MethodSchema,
    ScanReportSchema,
)

_SEVERITY_STYLE = {"High": "bold red", "Warning": "yellow", "Info": "cyan"}


def _method(m: MethodSchema) -> str:
    return f"{m.class_descriptor}->{m.name}{m.proto}"


def _where(f: FindingSchema) -> str:
    loc = f.location
    if loc.manifest_path is not None:
        return loc.manifest_path
    off = f"@0x{loc.offset:x}" if loc.offset is not None else ""
    return f"{loc.class_descriptor}->{loc.method}{off}"


def _findings_table(title: str, findings: list[FindingSchema]) -> Table:
    table = Table(title=title, show_lines=False)
    table.add_column("Rule", no_wrap=True)
    table.add_column("Severity")
    table.add_column("Evidence")
    table.add_column("Location", overflow="fold")
    for f in findings:
        style = _SEVERITY_STYLE.get(f.severity.value, "")
        evidence = f.evidence + (f" [pii: {f.pii_tag}]" if f.pii_tag else "")
        table.add_row(f.rule_id, f"[{style}]{f.severity}[/{style}]", evidence, _where(f))
    return table


def render_report(report: ScanReportSchema, console: Console) -> None:
    """Human-readable report grouped by the four assessment categories."""
    s = report.summary
    console.print(
        f"[bold]{report.apk.package}[/bold]  {report.apk.path}  sha256={report.apk.sha256[:12]}"
    )

    manifest = [f for f in report.findings if f.category == RuleCategory.ManifestWeakness]
    code = [f for f in report.findings if f.category != RuleCategory.ManifestWeakness]
    console.print(_findings_table("Manifest weaknesses", manifest))
    console.print(_findings_table("Security vulnerabilities", code))

    flows = Table(title="Privacy leaks")
    flows.add_column("Source", overflow="fold")
    flows.add_column("Sink", overflow="fold")
    flows.add_column("Channel")
    flows.add_column("PII")
    flows.add_column("Depth", justify="right")
    for p in report.flows:
        flows.add_row(
            f"{p.source.label}: {_method(p.source.method)}@0x{p.source.site:x}",
            f"{p.sink.pattern} in {_method(p.sink.method)}@0x{p.sink.site:x}",
            p.channel,
            p.pii_tag or "-",
            str(len(p.call_chain)),
        )
    console.print(flows)

    m = report.malware
    verdict = f"{m.engines_flagged}/{m.engines_total} engines ({m.source})"
    if m.error:
        verdict += f" - {m.error}"
    console.print(f"[bold]Malware:[/bold] {verdict}")
    if report.trackers:
        names = ", ".join(f"{t.name} ({t.class_count})" for t in report.trackers)
        console.print(f"[bold]Trackers:[/bold] {names}")
    for w in report.warnings:
        console.print(f"[dim]warning {w.code}: {w.message} {w.location or ''}[/dim]")

    counts = "  ".join(f"{c}={s.counts.get(c, 0)}" for c in AssessmentCategory)
    console.print(f"[bold]Summary:[/bold] {counts}  highest={s.highest_severity or '-'}")


def render_corpus(stats: CorpusStatsSchema, console: Console) -> None:
    console.print(f"[bold]{stats.n_apps} app(s) scanned, {len(stats.failures)} failed[/bold]")
    for title, prevalence in (
        ("Rule prevalence", stats.per_rule_prevalence),
        ("Tracker prevalence", stats.per_tracker_prevalence),
        ("Category prevalence", {str(k): v for k, v in stats.per_category_prevalence.items()}),
    ):
        table = Table(title=title)
        table.add_column("Name")
        table.add_column("Apps", justify="right")
        for name, frac in sorted(prevalence.items(), key=lambda kv: (-kv[1], kv[0])):
            table.add_row(name, f"{frac:.1%}")
        console.print(table)
    if stats.source_sink_matrix:
        table = Table(title="Source / sink flows")
        table.add_column("Source", overflow="fold")
        table.add_column("Sink")
        table.add_column("Flows", justify="right")
        for cell in stats.source_sink_matrix:
            table.add_row(cell.source, cell.sink, str(cell.count))
        console.print(table)
    for f in stats.failures:
        console.print(f"[red]failed[/red] {f.path}: {f.error.type}: {f.error.message}")


def render_keywords(db: KeywordDatabase, console: Console) -> None:
    """Expansion table for manual review."""
    table = Table(title=f"Keyword expansion (k={db.k})")
    table.add_column("Seed")
    table.add_column("Synonym")
    table.add_column("Similarity", justify="right")
    table.add_column("Accepted")
    for seed in db.seeds:
        syns = db.expanded.get(seed, ())
        if not syns:
            table.add_row(seed, "-", "", "")
        for syn in syns:
            table.add_row(
                seed, syn.word, f"{syn.similarity:.4f}", "yes" if syn.accepted else "[red]no[/red]"
            )
    console.print(table)
    console.print(f"{len(db.keywords)} keyword(s) in the database")

"""
CLI Command Implementations.

Each ``run_*`` function loads its groups, runs the analysis, renders or
serialises the result and returns the process exit code:

    0  success
    1  a verification failure, or an inexact result without --allow-inexact
    2  a group could not be loaded or exceeded a cap
"""
from __future__ import annotations

import csv
import io
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from datetime import datetime
from functools import partial
from itertools import repeat
from pathlib import Path
from typing import Any, Callable, Iterator, Sequence, TypeVar

from pydantic import BaseModel
from rich.console import Console
from rich.logging import RichHandler

from derangement_lab.analysis.models import (
    SCHEMA_VERSION,
    CheckResult,
    CheckStatus,
    CliqueReport,
    CorpusSummary,
    GroupAnalysis,
    KroneckerScanReport,
    SeriesReport,
    VerifyResult,
)
from derangement_lab.config import OutputFormat, RunConfig
from derangement_lab.errors import DerangementLabError

console = Console()
err_console = Console(stderr=True)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_LOAD_ERROR = 2

R = TypeVar("R")


def configure_logging(verbose: bool) -> None:
    """RichHandler on stderr; debug with --verbose, warnings otherwise."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=err_console, show_path=False, rich_tracebacks=False)],
        force=True,
    )


@contextmanager
def step(msg: str, *, quiet: bool = False) -> Iterator[None]:
    """Emit a transcript line for each pipeline step.

    Prints "[HH:MM:SS] → <msg>" before the block runs, then
    "[HH:MM:SS] ✓ <msg> (Xs)" after. Pass quiet=True for json/csv output so
    machine-readable results aren't polluted by progress text.
    """
    if not quiet:
        ts = datetime.now().strftime("%H:%M:%S")
        console.print(f"[dim]\\[{ts}][/] [cyan]→[/] {msg}")
    t0 = time.monotonic()
    try:
        yield
    finally:
        if not quiet:
            elapsed = time.monotonic() - t0
            ts = datetime.now().strftime("%H:%M:%S")
            console.print(f"[dim]\\[{ts}][/] [green]✓[/] {msg} [dim]({elapsed:.1f}s)[/]")


def _emit_json(command: str, data: Any, output_path: str | None) -> None:
    """Render the structured result as JSON, to stdout or to ``output_path``."""
    if isinstance(data, BaseModel):
        data = data.model_dump(mode="json")
    payload = {"schema": SCHEMA_VERSION, "command": command, "result": data}
    blob = json.dumps(payload, indent=2, default=str, sort_keys=True)
    _write(blob + "\n", output_path)


def _emit_csv(rows: Sequence[dict[str, Any]], output_path: str | None) -> None:
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    _write(buf.getvalue(), output_path)


def _write(text: str, output_path: str | None) -> None:
    if output_path:
        Path(output_path).expanduser().write_text(text, encoding="utf-8")
        err_console.print(f"[green]✓[/] Wrote {len(text):,} bytes to {output_path}")
    else:
        sys.stdout.write(text)


def _report_error(source: str, exc: DerangementLabError) -> None:
    err_console.print(f"[red]error:[/] {source}: {exc.located()}")
    if exc.hint:
        err_console.print(f"[dim]  hint: {exc.hint}[/]")


def _quiet(config: RunConfig) -> bool:
    return config.output_format != OutputFormat.TABLE


def _exit_for(failures: int, inexact: int, config: RunConfig) -> int:
    if failures:
        return EXIT_FAILED
    if inexact and not config.allow_inexact:
        return EXIT_FAILED
    return EXIT_OK


# ============================================================================
# Group sources and corpus fan-out
# ============================================================================

def _load(source: str, config: RunConfig):
    from derangement_lab.catalog.builtin import load_source
    return load_source(source, config.max_order)


def _corpus(directory: str | None, config: RunConfig) -> tuple[list, list[str]]:
    """Entries of a ``--dir`` corpus, or the built-in catalog."""
    from derangement_lab.catalog.builtin import builtin_catalog
    from derangement_lab.catalog.files import load_directory

    if directory is None:
        return list(builtin_catalog()), []
    loaded = load_directory(directory, config.max_order)
    return loaded.entries, loaded.diagnostics


def _guarded(fn: Callable[..., R], entry, config: RunConfig) -> tuple[R | None, str | None]:
    try:
        return fn(entry, config), None
    except DerangementLabError as exc:
        hint = f" (hint: {exc.hint})" if exc.hint else ""
        return None, f"{entry.name}: {exc.located()}{hint}"


def map_corpus(
    fn: Callable[..., R],
    entries: Sequence,
    config: RunConfig,
) -> list[tuple[R | None, str | None]]:
    """Apply ``fn(entry, config)`` to every entry, in corpus order."""
    if config.jobs > 1 and len(entries) > 1:
        logger.debug("fanning %d groups over %d workers", len(entries), config.jobs)
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            return list(pool.map(_guarded, repeat(fn), entries, repeat(config)))
    return [_guarded(fn, e, config) for e in entries]


# ============================================================================
# CSV rows
# ============================================================================

def _analysis_row(a: GroupAnalysis) -> dict[str, Any]:
    return {
        "group": a.name,
        "degree": a.degree,
        "order": a.order,
        "derangements": a.derangements,
        "omega": a.omega.size,
        "omega_exact": a.omega.exact,
        "alpha": a.alpha.size,
        "alpha_exact": a.alpha.exact,
        "alpha_ceiling_used": a.alpha_ceiling_used,
        "clique_coclique_product": a.clique_coclique_product,
        "series_length": a.series_length,
        "interior_length": a.interior_length,
        "quasiprimitive": a.quasiprimitive,
        "kappa": a.chain.kappa if a.chain else None,
        "chain_clique_size": a.chain.size if a.chain else None,
    }


def _verify_rows(results: Sequence[VerifyResult]) -> list[dict[str, Any]]:
    return [
        {
            "group": g.group,
            "degree": g.degree,
            "order": g.order,
            "check": c.name,
            "status": c.status.value,
            "detail": c.detail,
        }
        for g in results
        for c in g.checks
    ]


# ============================================================================
# analyze
# ============================================================================

def run_analyze(
    source: str | None,
    config: RunConfig,
    *,
    directory: str | None = None,
    output_path: str | None = None,
) -> int:
    """Analyse one group, or every group of a corpus."""
    from derangement_lab.analysis.analyzer import analyze_group, clique_free_envelope
    from derangement_lab.analysis.render import render_analysis

    quiet = _quiet(config)
    if source is not None and directory is None:
        try:
            entry = _load(source, config)
            with step(f"Analysing {entry.name}", quiet=quiet):
                report = analyze_group(entry, config)
        except DerangementLabError as exc:
            _report_error(source, exc)
            return EXIT_LOAD_ERROR
        if config.output_format == OutputFormat.JSON:
            _emit_json("analyze", report, output_path)
        elif config.output_format == OutputFormat.CSV:
            _emit_csv([_analysis_row(report)], output_path)
        else:
            render_analysis(report, console)
        return _exit_for(0, 0 if report.exact else 1, config)

    try:
        entries, diagnostics = _corpus(directory, config)
    except DerangementLabError as exc:
        _report_error(directory or "catalog", exc)
        return EXIT_LOAD_ERROR
    with step(f"Analysing {len(entries)} groups", quiet=quiet):
        outcomes = map_corpus(analyze_group, entries, config)
    analyses = [r for r, _ in outcomes if r is not None]
    diagnostics += [d for _, d in outcomes if d is not None]
    summary = CorpusSummary(
        analyses=analyses,
        clique_free_envelope=clique_free_envelope(analyses),
        diagnostics=diagnostics,
    )
    if config.output_format == OutputFormat.JSON:
        _emit_json("analyze", summary, output_path)
    elif config.output_format == OutputFormat.CSV:
        _emit_csv([_analysis_row(a) for a in analyses], output_path)
    else:
        for a in analyses:
            render_analysis(a, console)
        for d in diagnostics:
            err_console.print(f"[yellow]![/] {d}")
    inexact = sum(1 for a in analyses if not a.exact)
    if any(d for _, d in outcomes):
        return EXIT_LOAD_ERROR
    return _exit_for(0, inexact, config)


# ============================================================================
# verify
# ============================================================================

def run_verify(
    source: str | None,
    config: RunConfig,
    *,
    directory: str | None = None,
    output_path: str | None = None,
) -> int:
    """Run every check over one group, a ``--dir`` corpus, or the built-in catalog."""
    from derangement_lab.analysis.analyzer import clique_free_envelope, verify_and_analyze
    from derangement_lab.analysis.render import render_verify

    quiet = _quiet(config)
    try:
        if source is not None and directory is None:
            entries, diagnostics = [_load(source, config)], []
        else:
            entries, diagnostics = _corpus(directory, config)
    except DerangementLabError as exc:
        _report_error(source or directory or "catalog", exc)
        return EXIT_LOAD_ERROR

    with step(f"Verifying {len(entries)} group(s)", quiet=quiet):
        outcomes = map_corpus(verify_and_analyze, entries, config)

    results: list[VerifyResult] = []
    analyses: list[GroupAnalysis] = []
    errored = False
    for entry, (outcome, diagnostic) in zip(entries, outcomes):
        if outcome is None:
            # hit a cap or failed to load: recorded as a failed check
            errored = True
            diagnostics.append(diagnostic)
            results.append(VerifyResult(
                group=entry.name, degree=entry.degree,
                checks=[CheckResult(name="load", status=CheckStatus.FAIL, detail=diagnostic)],
            ))
            continue
        result, analysis = outcome
        results.append(result)
        if result.skipped:
            diagnostics.append(f"{result.group}: intransitive, skipped")
        if analysis is not None:
            analyses.append(analysis)

    summary = CorpusSummary(
        groups=results,
        clique_free_envelope=clique_free_envelope(analyses),
        diagnostics=diagnostics,
    )

    if summary.verified == 0:
        summary.groups.append(VerifyResult(
            group="(corpus)", degree=0,
            checks=[CheckResult(name="non-empty", status=CheckStatus.FAIL, detail="nothing verified")],
        ))

    if config.output_format == OutputFormat.JSON:
        _emit_json("verify", summary, output_path)
    elif config.output_format == OutputFormat.CSV:
        _emit_csv(_verify_rows(summary.groups), output_path)
    else:
        render_verify(summary, console)
    if errored:
        return EXIT_LOAD_ERROR
    return _exit_for(summary.failures, summary.inexact, config)


# ============================================================================
# Per-group reports: one group or a --dir corpus
# ============================================================================

def _run_reports(
    command: str,
    fn: Callable[..., R],
    source: str | None,
    config: RunConfig,
    *,
    directory: str | None,
    output_path: str | None,
    label: str,
    rows: Callable[[R], list[dict[str, Any]]],
    render: Callable[[R, Console], None],
    outcome: Callable[[R], tuple[int, int]],
) -> int:
    """
    Shared driver for ``kronecker``, ``clique`` and ``series``.

    A single group emits its report as the JSON result; a corpus emits
    ``{"reports": [...], "diagnostics": [...]}`` and concatenated CSV rows.
    ``outcome`` maps a report to its (failures, inexact) counts.
    """
    quiet = _quiet(config)
    if directory is None:
        if source is None:
            err_console.print("[red]error:[/] give a group or --dir")
            return EXIT_LOAD_ERROR
        try:
            entry = _load(source, config)
            with step(f"{label} {entry.name}", quiet=quiet):
                report = fn(entry, config)
        except DerangementLabError as exc:
            _report_error(source, exc)
            return EXIT_LOAD_ERROR
        reports, diagnostics, errored = [report], [], False
    else:
        try:
            entries, diagnostics = _corpus(directory, config)
        except DerangementLabError as exc:
            _report_error(directory, exc)
            return EXIT_LOAD_ERROR
        with step(f"{label} {len(entries)} groups", quiet=quiet):
            outcomes = map_corpus(fn, entries, config)
        reports = [r for r, _ in outcomes if r is not None]
        errors = [d for _, d in outcomes if d is not None]
        diagnostics += errors
        errored = bool(errors)

    if config.output_format == OutputFormat.JSON:
        if directory is None:
            _emit_json(command, reports[0], output_path)
        else:
            _emit_json(command, {
                "reports": [r.model_dump(mode="json") for r in reports],
                "diagnostics": diagnostics,
            }, output_path)
    elif config.output_format == OutputFormat.CSV:
        _emit_csv([row for r in reports for row in rows(r)], output_path)
    else:
        for r in reports:
            render(r, console)
        for d in diagnostics:
            err_console.print(f"[yellow]![/] {d}")

    if errored:
        return EXIT_LOAD_ERROR
    failures = inexact = 0
    for r in reports:
        f, i = outcome(r)
        failures += f
        inexact += i
    return _exit_for(failures, inexact, config)


# ============================================================================
# kronecker
# ============================================================================

def _kronecker_rows(report: KroneckerScanReport) -> list[dict[str, Any]]:
    rows = []
    for row in report.rows:
        flat = row.model_dump(mode="json")
        flat["generatorsU"] = " ".join(row.generatorsU)
        flat["generatorsUp"] = " ".join(row.generatorsUp)
        rows.append(flat)
    return rows


def _kronecker_outcome(report: KroneckerScanReport) -> tuple[int, int]:
    failures = sum(1 for r in report.rows if r.pigeonhole_holds is False and r.pigeonhole_exact)
    failures += 0 if report.equivalence_relation else 1
    inexact = sum(1 for r in report.rows if r.pigeonhole_exact is False)
    return failures, inexact


def run_kronecker(
    source: str | None,
    config: RunConfig,
    *,
    directory: str | None = None,
    all_pairs: bool = False,
    output_path: str | None = None,
) -> int:
    """Classify subgroup pairs and run the pigeonhole check on equivalent ones."""
    from derangement_lab.analysis.analyzer import kronecker_scan
    from derangement_lab.analysis.render import render_kronecker

    return _run_reports(
        "kronecker", partial(kronecker_scan, all_pairs=all_pairs), source, config,
        directory=directory, output_path=output_path,
        label="Scanning subgroup pairs of",
        rows=_kronecker_rows, render=render_kronecker, outcome=_kronecker_outcome,
    )


# ============================================================================
# clique
# ============================================================================

def _clique_rows(report: CliqueReport) -> list[dict[str, Any]]:
    return [{
        "group": report.group,
        "degree": report.degree,
        "order": report.order,
        "derangements": report.derangements,
        "omega": report.omega.size,
        "omega_exact": report.omega.exact,
        "alpha": report.alpha.size,
        "alpha_exact": report.alpha.exact,
        "alpha_ceiling_used": report.alpha_ceiling_used,
        "triangle": report.triangle,
    }]


def run_clique(
    source: str | None,
    config: RunConfig,
    *,
    directory: str | None = None,
    dimacs_path: str | None = None,
    output_path: str | None = None,
) -> int:
    """ω and α of one derangement graph, optionally exporting it as DIMACS."""
    from derangement_lab.analysis.analyzer import clique_report
    from derangement_lab.analysis.render import render_clique

    if dimacs_path and directory is not None:
        err_console.print("[red]error:[/] --dimacs takes a single group, not --dir")
        return EXIT_LOAD_ERROR
    return _run_reports(
        "clique", partial(clique_report, dimacs_path=dimacs_path), source, config,
        directory=directory, output_path=output_path,
        label="Solving cliques of",
        rows=_clique_rows, render=render_clique,
        outcome=lambda r: (0, 0 if r.exact else 1),
    )


# ============================================================================
# series
# ============================================================================

def _series_rows(report: SeriesReport) -> list[dict[str, Any]]:
    return [
        {
            "group": report.group,
            "index": report.length - i,
            "blocks": json.dumps(b.blocks),
            "block_size": b.block_size,
            "kernel_order": b.kernel_order,
        }
        for i, b in enumerate(report.chain)
    ]


def run_series(
    source: str | None,
    config: RunConfig,
    *,
    directory: str | None = None,
    output_path: str | None = None,
) -> int:
    """Normal partitions and a longest normal imprimitivity series."""
    from derangement_lab.analysis.analyzer import series_report
    from derangement_lab.analysis.render import render_series

    return _run_reports(
        "series", series_report, source, config,
        directory=directory, output_path=output_path,
        label="Enumerating normal partitions of",
        rows=_series_rows, render=render_series,
        outcome=lambda r: (0, 0),
    )


# ============================================================================
# lemma26-test
# ============================================================================

def run_lemma26(config: RunConfig, *, instances: int = 200, output_path: str | None = None) -> int:
    """Seeded random instances of the partition-avoiding subset procedure."""
    from derangement_lab.analysis.analyzer import avoidance_suite
    from derangement_lab.analysis.render import render_avoidance

    with step(f"Running {instances} partition-avoidance instances", quiet=_quiet(config)):
        suite = avoidance_suite(config.seed, instances)

    if config.output_format == OutputFormat.JSON:
        _emit_json("lemma26-test", suite, output_path)
    elif config.output_format == OutputFormat.CSV:
        _emit_csv([r.model_dump(mode="json") for r in suite.rows], output_path)
    else:
        render_avoidance(suite, console)
    return _exit_for(suite.failures, 0, config)


# ============================================================================
# catalog
# ============================================================================

def run_catalog(config: RunConfig, *, output_path: str | None = None) -> int:
    """List the built-in groups."""
    from derangement_lab.analysis.render import render_catalog
    from derangement_lab.catalog.builtin import builtin_catalog

    entries = builtin_catalog()
    if config.output_format == OutputFormat.JSON:
        _emit_json("catalog", [
            {"name": e.name, "degree": e.degree, "generators": list(e.generators), "tags": sorted(e.tags)}
            for e in entries
        ], output_path)
    elif config.output_format == OutputFormat.CSV:
        _emit_csv([
            {
                "name": e.name,
                "degree": e.degree,
                "generators": " ".join(e.generators),
                "tags": " ".join(sorted(e.tags)),
            }
            for e in entries
        ], output_path)
    else:
        render_catalog(entries, console)
    return EXIT_OK

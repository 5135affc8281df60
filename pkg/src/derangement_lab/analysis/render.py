"""Rich renderers for the report models. Table output only; JSON/CSV bypass this."""
from __future__ import annotations

from typing import Sequence

from rich import box
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from derangement_lab.analysis.models import (
    AvoidanceSuite,
    BlockSystemModel,
    CheckStatus,
    CliqueReport,
    CliqueSummary,
    CorpusSummary,
    GroupAnalysis,
    KroneckerScanReport,
    SeriesReport,
)
from derangement_lab.catalog.files import CatalogEntry


_STATUS_COLOR = {
    CheckStatus.PASS: "green",
    CheckStatus.FAIL: "bold red",
    CheckStatus.SKIP: "dim",
    CheckStatus.INEXACT: "yellow",
}

_CLASS_COLOR = {
    "conjugate": "dim",
    "equal-union-nonconjugate": "bold magenta",
    "inequivalent": "",
}


def _yes(flag: bool | None) -> str:
    if flag is None:
        return "[dim]n/a[/]"
    return "[green]yes[/]" if flag else "[red]no[/]"


def _clique(c: CliqueSummary) -> str:
    suffix = "" if c.exact else " [yellow](inexact: node budget hit)[/]"
    return f"[bold]{c.size}[/]{suffix}"


def _blocks(b: BlockSystemModel) -> str:
    return " ".join("{" + ",".join(str(p) for p in block) + "}" for block in b.blocks)


def render_analysis(a: GroupAnalysis, console: Console) -> None:
    table = Table(show_header=False, box=box.SIMPLE)
    table.add_column("Field", style="dim")
    table.add_column("Value")

    table.add_row("degree n", str(a.degree))
    table.add_row("|G|", f"{a.order:,}")
    table.add_row("|D(G)|", f"{a.derangements:,}")
    table.add_row("ω (clique)", _clique(a.omega))
    table.add_row("α (coclique)", _clique(a.alpha) + (" [dim](stopped at |G|//ω)[/]" if a.alpha_ceiling_used else ""))
    colour = "green" if a.clique_coclique_holds else "red"
    table.add_row("α·ω vs |G|", f"[{colour}]{a.clique_coclique_product} ≤ {a.order}[/]")
    table.add_row("triangle", _yes(a.triangle))
    table.add_row("transitive", _yes(a.transitive))
    table.add_row("primitive", _yes(a.primitive))
    table.add_row("quasiprimitive", _yes(a.quasiprimitive))
    table.add_row("innately transitive", _yes(a.innately_transitive))
    if a.series_length is not None:
        table.add_row("ℓ (normal series)", f"{a.series_length} [dim](interior {a.interior_length})[/]")
    if a.chain is not None:
        c = a.chain
        table.add_row(
            "chain clique",
            f"κ={c.kappa}, indices {c.indices}, |C|={c.size} ≥ {c.stated_lower_bound} [green]verified[/]",
        )
    if a.omega.witness:
        table.add_row("ω witness", " ".join(a.omega.witness))

    title = f"[bold cyan]{a.name}[/]"
    if a.tags:
        title += f"  [dim]{', '.join(a.tags)}[/]"
    console.print(Panel(table, title=title, box=box.ROUNDED))


def render_clique(r: CliqueReport, console: Console) -> None:
    table = Table(show_header=False, box=box.SIMPLE)
    table.add_column("Field", style="dim")
    table.add_column("Value")
    table.add_row("vertices", f"{r.order:,}")
    table.add_row("degree |D(G)|", f"{r.derangements:,}")
    table.add_row("ω", _clique(r.omega) + f" [dim]({r.omega.nodes:,} nodes)[/]")
    table.add_row("ω witness", " ".join(r.omega.witness))
    table.add_row("α", _clique(r.alpha) + (" [dim](stopped at |G|//ω)[/]" if r.alpha_ceiling_used else ""))
    table.add_row("triangle", _yes(r.triangle))
    if r.dimacs_path:
        table.add_row("DIMACS", r.dimacs_path)
    console.print(Panel(table, title=f"[bold]Derangement graph: {r.group}[/]", box=box.ROUNDED))


def render_series(r: SeriesReport, console: Console) -> None:
    table = Table(title=f"Normal partitions of {r.group}", box=box.SIMPLE)
    table.add_column("blocks", justify="right")
    table.add_column("size", justify="right")
    table.add_column("|G_(Σ)|", justify="right")
    table.add_column("partition")
    for b in r.normal_partitions:
        table.add_row(str(len(b.blocks)), str(b.block_size), str(b.kernel_order), _blocks(b))
    console.print(table)

    chain = "\n".join(
        f"  Σ_{r.length - i}: {_blocks(b)}  [dim]|G_(Σ)|={b.kernel_order}[/]"
        for i, b in enumerate(r.chain)
    )
    console.print(Panel(
        f"[bold]ℓ = {r.length}[/] [dim](interior {r.interior_length})[/]   "
        f"quasiprimitive: {_yes(r.quasiprimitive)}\n\n{chain}",
        title="[bold]Longest normal series[/]",
        box=box.ROUNDED,
    ))


def render_verify(summary: CorpusSummary, console: Console) -> None:
    table = Table(title="Verification", box=box.SIMPLE)
    table.add_column("group")
    table.add_column("n", justify="right")
    table.add_column("|G|", justify="right")
    table.add_column("check")
    table.add_column("status")
    table.add_column("detail", style="dim")
    for g in summary.groups:
        for i, c in enumerate(g.checks):
            colour = _STATUS_COLOR[c.status]
            table.add_row(
                g.group if i == 0 else "",
                str(g.degree) if i == 0 else "",
                f"{g.order:,}" if i == 0 and g.order is not None else "",
                c.name,
                f"[{colour}]{c.status.value}[/]",
                c.detail,
            )
    console.print(table)

    if summary.clique_free_envelope:
        env = Table(title="Clique-free envelope (largest degree with ω < c)", box=box.SIMPLE)
        env.add_column("c", justify="right")
        env.add_column("max degree", justify="right")
        env.add_column("attained by")
        for row in summary.clique_free_envelope:
            env.add_row(str(row.c), str(row.max_degree), row.group)
        console.print(env)

    for d in summary.diagnostics:
        console.print(f"[yellow]![/] {d}")

    if summary.failures:
        console.print(f"[bold red]✗ {summary.failures} check(s) failed[/]")
    elif summary.inexact:
        console.print(f"[yellow]~ {summary.inexact} check(s) inexact (node budget)[/]")
    else:
        console.print(f"[green]✓ {summary.verified} group(s) verified[/]")


def render_kronecker(r: KroneckerScanReport, console: Console) -> None:
    table = Table(
        title=f"Subgroup pairs of {r.group} (|G|={r.order}, {r.subgroups} subgroups, {r.classes} classes)",
        box=box.SIMPLE,
    )
    table.add_column("[G:U]", justify="right")
    table.add_column("[G:U′]", justify="right")
    table.add_column("classification")
    table.add_column("ω(cosets of U)", justify="right")
    table.add_column("ω ≤ [G:U′]")
    for row in r.rows:
        if not row.equivalent:
            continue
        colour = _CLASS_COLOR.get(row.classification.value, "")
        omega = "" if row.omega_cosetU is None else ("" if row.omega_exact else "≥ ") + str(row.omega_cosetU)
        table.add_row(
            str(row.indexU),
            str(row.indexUp),
            f"[{colour}]{row.classification.value}[/]" if colour else row.classification.value,
            omega,
            _yes(row.pigeonhole_holds) + ("" if row.pigeonhole_exact is not False else " [yellow](inexact)[/]"),
        )
    console.print(table)

    inequivalent = sum(1 for row in r.rows if not row.equivalent)
    console.print(f"[dim]{inequivalent} inequivalent pair(s) not shown[/]")

    env = Table(title="Envelope: max [G:U] over equivalent pairs with [G:U′] = n", box=box.SIMPLE)
    env.add_column("n", justify="right")
    env.add_column("max [G:U]", justify="right")
    for e in r.envelope:
        env.add_row(str(e.n), str(e.max_index))
    console.print(env)

    verdict = "[green]yes[/]" if r.equivalence_relation else "[bold red]NO[/]"
    console.print(f"Equivalence relation on scanned subgroups: {verdict}")
    if r.nonconjugate_equivalent:
        console.print(
            f"[bold magenta]{len(r.nonconjugate_equivalent)} nonconjugate equivalent pair(s)[/]"
        )


def render_avoidance(s: AvoidanceSuite, console: Console) -> None:
    tight = sum(1 for r in s.rows if r.size * r.a**r.sigma == r.s * (r.a - 1) ** r.sigma)
    status = "[green]all hold[/]" if not s.failures else f"[bold red]{s.failures} failed[/]"
    console.print(Panel(
        f"instances: {s.instances}  (seed {s.seed})\n"
        f"bound |Y| ≥ s(1−1/a)^σ and avoidance: {status}\n"
        f"[dim]bound met with equality: {tight}[/]",
        title="[bold]Partition-avoiding subsets[/]",
        box=box.ROUNDED,
    ))


def render_catalog(entries: Sequence[CatalogEntry], console: Console) -> None:
    table = Table(title="Built-in groups", box=box.SIMPLE)
    table.add_column("name")
    table.add_column("degree", justify="right")
    table.add_column("generators")
    table.add_column("tags", style="dim")
    for e in entries:
        table.add_row(e.name, str(e.degree), " ".join(e.generators), ", ".join(sorted(e.tags)))
    console.print(table)

"""
Derangement Lab CLI.

Derangement graphs, clique bounds and normal block systems of finite
permutation groups.
"""
from __future__ import annotations

from typing import Annotated, Optional

import typer

from derangement_lab.config import ENV_PREFIX, OutputFormat, RunConfig

app = typer.Typer(
    name="derangement-lab",
    help="Derangement graphs and clique bounds for finite permutation groups",
    no_args_is_help=True,
)


def _env(flag: str) -> str:
    return ENV_PREFIX + flag.upper().replace("-", "_")


MaxOrder = Annotated[int, typer.Option(
    "--max-order", envvar=_env("max-order"),
    help="Refuse to enumerate groups larger than this.",
)]
MaxGraphVertices = Annotated[int, typer.Option(
    "--max-graph-vertices", envvar=_env("max-graph-vertices"),
    help="Refuse to build derangement graphs with more vertices than this.",
)]
NodeBudget = Annotated[int, typer.Option(
    "--node-budget", envvar=_env("node-budget"),
    help="Branch-and-bound nodes per clique search. When exhausted the result "
         "is reported as inexact (a lower bound).",
)]
MaxLatticeOrder = Annotated[int, typer.Option(
    "--max-lattice-order", envvar=_env("max-lattice-order"),
    help="Largest group whose full subgroup lattice is enumerated.",
)]
MaxCosetDegree = Annotated[int, typer.Option(
    "--max-coset-degree", envvar=_env("max-coset-degree"),
    help="Largest index for which a coset action is built.",
)]
Format = Annotated[OutputFormat, typer.Option(
    "--format", "-f", envvar=_env("format"),
    help="table (Rich render), json (stable schema) or csv (one row per record).",
)]
Output = Annotated[Optional[str], typer.Option(
    "--output", "-o",
    help="With --format json/csv, write to this file instead of stdout.",
)]
AllowInexact = Annotated[bool, typer.Option(
    "--allow-inexact", envvar=_env("allow-inexact"),
    help="Exit 0 even when a node budget ran out before a search finished.",
)]
Verbose = Annotated[bool, typer.Option(
    "--verbose", "-v", envvar=_env("verbose"),
    help="Debug logging on stderr.",
)]
Directory = Annotated[Optional[str], typer.Option(
    "--dir", "-d",
    help="Run over every .grp file in this directory instead of a single group.",
)]
Jobs = Annotated[int, typer.Option(
    "--jobs", "-j", envvar=_env("jobs"),
    help="Worker processes for corpus runs. Results are reported in corpus order.",
)]
OptionalSource = Annotated[Optional[str], typer.Argument(
    help="Built-in group name (see `catalog`) or a .grp file. Omit with --dir.",
)]


def _config(
    *,
    verbose: bool,
    output_format: OutputFormat = OutputFormat.TABLE,
    **caps,
) -> RunConfig:
    from derangement_lab.cli.commands import configure_logging

    configure_logging(verbose)
    return RunConfig(output_format=output_format, **caps)


@app.command()
def analyze(
    source: Annotated[Optional[str], typer.Argument(
        help="Built-in group name or .grp file. Omit with --dir.",
    )] = None,
    directory: Directory = None,
    max_order: MaxOrder = 100_000,
    max_graph_vertices: MaxGraphVertices = 10_080,
    node_budget: NodeBudget = 10**8,
    output_format: Format = OutputFormat.TABLE,
    output: Output = None,
    allow_inexact: AllowInexact = False,
    jobs: Jobs = 1,
    verbose: Verbose = False,
):
    """
    Everything about one group: ω, α, block structure, ℓ and the chain clique.

    Examples:
        derangement-lab analyze S5-natural
        derangement-lab analyze my_group.grp --format json
        derangement-lab analyze --dir groups/ --jobs 4
    """
    from derangement_lab.cli.commands import EXIT_LOAD_ERROR, err_console, run_analyze

    if source is None and directory is None:
        err_console.print("[red]error:[/] give a group or --dir")
        raise typer.Exit(EXIT_LOAD_ERROR)
    config = _config(
        verbose=verbose, output_format=output_format,
        max_order=max_order, max_graph_vertices=max_graph_vertices,
        node_budget=node_budget, allow_inexact=allow_inexact, jobs=jobs,
    )
    raise typer.Exit(run_analyze(source, config, directory=directory, output_path=output))


@app.command()
def verify(
    source: Annotated[Optional[str], typer.Argument(
        help="Built-in group name or .grp file. Omit to verify the whole built-in catalog.",
    )] = None,
    directory: Directory = None,
    max_order: MaxOrder = 100_000,
    max_graph_vertices: MaxGraphVertices = 10_080,
    node_budget: NodeBudget = 10**8,
    output_format: Format = OutputFormat.TABLE,
    output: Output = None,
    allow_inexact: AllowInexact = False,
    jobs: Jobs = 1,
    verbose: Verbose = False,
):
    """
    Check the clique/coclique bounds and the chain clique over a corpus.

    Exits 1 if any check fails, or if a search was inexact without
    --allow-inexact.

    Examples:
        derangement-lab verify
        derangement-lab verify PSL(3,2)-deg7
        derangement-lab verify --dir groups/ --format csv --output checks.csv
    """
    from derangement_lab.cli.commands import run_verify

    config = _config(
        verbose=verbose, output_format=output_format,
        max_order=max_order, max_graph_vertices=max_graph_vertices,
        node_budget=node_budget, allow_inexact=allow_inexact, jobs=jobs,
    )
    raise typer.Exit(run_verify(source, config, directory=directory, output_path=output))


@app.command()
def kronecker(
    source: OptionalSource = None,
    directory: Directory = None,
    all_pairs: Annotated[bool, typer.Option(
        "--all-pairs",
        help="List every unordered pair of subgroups instead of one pair per pair of classes.",
    )] = False,
    max_order: MaxOrder = 100_000,
    max_lattice_order: MaxLatticeOrder = 2_000,
    max_coset_degree: MaxCosetDegree = 5_040,
    max_graph_vertices: MaxGraphVertices = 10_080,
    node_budget: NodeBudget = 10**8,
    output_format: Format = OutputFormat.TABLE,
    output: Output = None,
    allow_inexact: AllowInexact = False,
    jobs: Jobs = 1,
    verbose: Verbose = False,
):
    """
    Compare derangement sets of coset actions across subgroup pairs.

    Examples:
        derangement-lab kronecker PSL(3,2)-deg7
        derangement-lab kronecker S4-natural --all-pairs --format json
        derangement-lab kronecker --dir groups/ --format csv --jobs 4
    """
    from derangement_lab.cli.commands import run_kronecker

    config = _config(
        verbose=verbose, output_format=output_format,
        max_order=max_order, max_lattice_order=max_lattice_order,
        max_coset_degree=max_coset_degree, max_graph_vertices=max_graph_vertices,
        node_budget=node_budget, allow_inexact=allow_inexact, jobs=jobs,
    )
    raise typer.Exit(run_kronecker(source, config, directory=directory, all_pairs=all_pairs, output_path=output))


@app.command()
def clique(
    source: OptionalSource = None,
    directory: Directory = None,
    dimacs: Annotated[Optional[str], typer.Option(
        "--dimacs",
        help="Also write the derangement graph in DIMACS edge format to this path.",
    )] = None,
    max_order: MaxOrder = 100_000,
    max_graph_vertices: MaxGraphVertices = 10_080,
    node_budget: NodeBudget = 10**8,
    output_format: Format = OutputFormat.TABLE,
    output: Output = None,
    allow_inexact: AllowInexact = False,
    jobs: Jobs = 1,
    verbose: Verbose = False,
):
    """
    Clique and coclique numbers of the derangement graph.

    Examples:
        derangement-lab clique S4-natural
        derangement-lab clique A5-natural --dimacs a5.dimacs
        derangement-lab clique --dir groups/ --format json
    """
    from derangement_lab.cli.commands import run_clique

    config = _config(
        verbose=verbose, output_format=output_format,
        max_order=max_order, max_graph_vertices=max_graph_vertices,
        node_budget=node_budget, allow_inexact=allow_inexact, jobs=jobs,
    )
    raise typer.Exit(run_clique(source, config, directory=directory, dimacs_path=dimacs, output_path=output))


@app.command()
def series(
    source: OptionalSource = None,
    directory: Directory = None,
    max_order: MaxOrder = 100_000,
    output_format: Format = OutputFormat.TABLE,
    output: Output = None,
    jobs: Jobs = 1,
    verbose: Verbose = False,
):
    """
    Normal partitions and a longest chain of them.

    Examples:
        derangement-lab series C8-regular
        derangement-lab series C2wrC3-deg6 --format json
        derangement-lab series --dir groups/
    """
    from derangement_lab.cli.commands import run_series

    config = _config(verbose=verbose, output_format=output_format, max_order=max_order, jobs=jobs)
    raise typer.Exit(run_series(source, config, directory=directory, output_path=output))


@app.command("lemma26-test")
def lemma26_test(
    seed: Annotated[int, typer.Option("--seed", envvar=_env("seed"), help="RNG seed.")] = 0,
    instances: Annotated[int, typer.Option(
        "--instances", "-n", min=1,
        help="Random partition families to try.",
    )] = 200,
    output_format: Format = OutputFormat.TABLE,
    output: Output = None,
    verbose: Verbose = False,
):
    """
    Random instances of the partition-avoiding subset construction.

    Each instance checks the size bound |Y| ≥ s(1−1/a)^σ and that Y contains
    no part of any partition.

    Examples:
        derangement-lab lemma26-test
        derangement-lab lemma26-test --seed 7 --instances 1000 --format csv
    """
    from derangement_lab.cli.commands import run_lemma26

    config = _config(verbose=verbose, output_format=output_format, seed=seed)
    raise typer.Exit(run_lemma26(config, instances=instances, output_path=output))


@app.command()
def catalog(
    output_format: Format = OutputFormat.TABLE,
    output: Output = None,
):
    """
    List the built-in groups.

    Examples:
        derangement-lab catalog
        derangement-lab catalog --format json
    """
    from derangement_lab.cli.commands import run_catalog

    config = _config(verbose=False, output_format=output_format)
    raise typer.Exit(run_catalog(config, output_path=output))


def main():
    """Entry point for CLI."""
    app()


if __name__ == "__main__":
    main()

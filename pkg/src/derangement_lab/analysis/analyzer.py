"""
Derangement Lab Analyzer.

Pure orchestration: each function takes a catalog entry and a ``RunConfig``
and returns a report model. Nothing here prints; the CLI decides how to show
the result.

Example:
    entry = get_entry("S4-natural")
    report = analyze_group(entry, RunConfig())
    report.omega.size, report.alpha.size        # 4, 6
"""
from __future__ import annotations

import logging
import random
from typing import Iterable, Sequence

from derangement_lab.analysis.blocks import (
    BlockSystem,
    is_innately_transitive,
    is_primitive,
    is_quasiprimitive,
    max_normal_series,
    normal_partitions,
)
from derangement_lab.analysis.constructions import (
    ChainCliqueCertificate,
    avoidance_bound_holds,
    avoids_all_parts,
    chain_clique,
    partition_avoiding_subset,
    random_instance,
)
from derangement_lab.analysis.dgraph import (
    CliqueResult,
    DerangementGraph,
    build_graph,
    clique_number,
    coclique_number,
    triangle_exists,
    write_dimacs,
)
from derangement_lab.analysis.kronecker import (
    envelope,
    is_equivalence_relation,
    pigeonhole_bound_check,
    scan_pairs,
)
from derangement_lab.analysis.models import (
    AvoidanceRow,
    AvoidanceSuite,
    BlockSystemModel,
    ChainCliqueSummary,
    CheckResult,
    CheckStatus,
    CliqueReport,
    CliqueSummary,
    EnvelopeEntry,
    EnvelopeRow,
    GroupAnalysis,
    KroneckerRow,
    KroneckerScanReport,
    SeriesReport,
    VerifyResult,
)
from derangement_lab.catalog.files import CatalogEntry
from derangement_lab.config import RunConfig
from derangement_lab.core.group import (
    PermGroup,
    all_subgroups,
    subgroup_conjugacy_classes,
)
from derangement_lab.core.partition import one_based
from derangement_lab.core.permutation import format_cycles
from derangement_lab.errors import ConstructionViolation

logger = logging.getLogger(__name__)


# ============================================================================
# Model builders
# ============================================================================

def _cycles(G: PermGroup, indices: Iterable[int]) -> list[str]:
    return [format_cycles(G.element(i)) for i in indices]


def clique_summary(G: PermGroup, result: CliqueResult) -> CliqueSummary:
    return CliqueSummary(
        size=result.size,
        exact=result.exact,
        witness=_cycles(G, result.witness),
        nodes=result.nodes,
    )


def block_model(system: BlockSystem) -> BlockSystemModel:
    kernel = system.witness_kernel
    return BlockSystemModel(
        blocks=one_based(system.blocks),
        block_size=system.block_size,
        kernel_order=kernel.order if kernel is not None else None,
    )


def chain_summary(G: PermGroup, cert: ChainCliqueCertificate) -> ChainCliqueSummary:
    return ChainCliqueSummary(
        indices=list(cert.indices),
        witnesses=_cycles(G, cert.witnesses),
        kappa=cert.kappa,
        size=cert.size,
        stated_lower_bound=cert.stated_lower_bound,
        clique=_cycles(G, cert.clique),
    )


# ============================================================================
# Cliques
# ============================================================================

def _solve(G: PermGroup, config: RunConfig) -> tuple[DerangementGraph, CliqueResult, CliqueResult, bool]:
    """Γ_G, ω and α; α may stop at |G| // ω above ``exact_alpha_max_order``."""
    graph = build_graph(G, max_vertices=config.max_graph_vertices)
    omega = clique_number(graph, config.node_budget)
    ceiling = None
    if G.order > config.exact_alpha_max_order and omega.exact:
        ceiling = G.order // omega.size
    alpha = coclique_number(graph, config.node_budget, ceiling)
    if not graph.is_clique(omega.witness):
        raise ConstructionViolation(f"{G.name}: clique witness is not a clique")
    if not graph.is_intersecting(alpha.witness):
        raise ConstructionViolation(f"{G.name}: coclique witness is not an intersecting set")
    return graph, omega, alpha, ceiling is not None


def clique_report(
    entry: CatalogEntry,
    config: RunConfig,
    dimacs_path: str | None = None,
) -> CliqueReport:
    G = entry.to_group(config.max_order)
    graph, omega, alpha, ceiling_used = _solve(G, config)
    if dimacs_path:
        write_dimacs(graph, dimacs_path)
    return CliqueReport(
        group=entry.name,
        degree=G.degree,
        order=G.order,
        derangements=graph.degree,
        omega=clique_summary(G, omega),
        alpha=clique_summary(G, alpha),
        alpha_ceiling_used=ceiling_used,
        triangle=triangle_exists(graph),
        dimacs_path=dimacs_path,
    )


# ============================================================================
# Series
# ============================================================================

def series_report(entry: CatalogEntry, config: RunConfig) -> SeriesReport:
    """Normal partitions and a longest normal series; ``NotTransitive`` otherwise."""
    G = entry.to_group(config.max_order)
    series = max_normal_series(G)
    return SeriesReport(
        group=entry.name,
        degree=G.degree,
        order=G.order,
        length=series.length,
        interior_length=series.interior_length,
        quasiprimitive=is_quasiprimitive(G),
        normal_partitions=[block_model(s) for s in normal_partitions(G)],
        chain=[block_model(s) for s in series.chain],
    )


# ============================================================================
# Analyze / verify
# ============================================================================

def analyze_group(
    entry: CatalogEntry,
    config: RunConfig,
    *,
    group: PermGroup | None = None,
) -> GroupAnalysis:
    """Degree, order, |D(G)|, ω, α, ℓ and the chain-clique certificate of one group."""
    G = group if group is not None else entry.to_group(config.max_order)
    graph, omega, alpha, ceiling_used = _solve(G, config)
    product = omega.size * alpha.size
    report = GroupAnalysis(
        name=entry.name,
        degree=G.degree,
        order=G.order,
        tags=sorted(entry.tags),
        transitive=G.is_transitive(),
        derangements=graph.degree,
        omega=clique_summary(G, omega),
        alpha=clique_summary(G, alpha),
        alpha_ceiling_used=ceiling_used,
        clique_coclique_product=product,
        clique_coclique_holds=product <= G.order,
        triangle=triangle_exists(graph),
    )
    if not report.transitive:
        return report

    series = max_normal_series(G)
    cert = chain_clique(G, series)
    return report.model_copy(update={
        "primitive": is_primitive(G),
        "quasiprimitive": is_quasiprimitive(G),
        "innately_transitive": is_innately_transitive(G),
        "series_length": series.length,
        "interior_length": series.interior_length,
        "chain": chain_summary(G, cert),
    })


def _status(ok: bool, exact: bool, *, lower_bound: bool) -> CheckStatus:
    """
    Lower-bound claims (ω ≥ k) are proved by any witness, exact or not;
    upper-bound claims (α·ω ≤ |G|) are only proved by exact values.
    """
    if lower_bound:
        if ok:
            return CheckStatus.PASS
        return CheckStatus.FAIL if exact else CheckStatus.INEXACT
    if not ok:
        return CheckStatus.FAIL
    return CheckStatus.PASS if exact else CheckStatus.INEXACT


def verify_group(entry: CatalogEntry, config: RunConfig) -> VerifyResult:
    """Run every finitely checkable claim on one group."""
    return verify_and_analyze(entry, config)[0]


def verify_and_analyze(entry: CatalogEntry, config: RunConfig) -> tuple[VerifyResult, GroupAnalysis | None]:
    """``verify_group`` plus the analysis it ran, for callers that also need ω."""
    G = entry.to_group(config.max_order)
    result = VerifyResult(group=entry.name, degree=G.degree, order=G.order)
    if not G.is_transitive():
        result.checks.append(CheckResult(
            name="transitive", status=CheckStatus.SKIP, detail="intransitive; skipped",
        ))
        return result, None
    try:
        a = analyze_group(entry, config, group=G)
    except ConstructionViolation as exc:
        result.checks.append(CheckResult(name="construction", status=CheckStatus.FAIL, detail=exc.message))
        return result, None

    n, w, al = G.degree, a.omega, a.alpha
    checks = result.checks
    if n >= 2:
        checks.append(CheckResult(
            name="jordan",
            status=_status(a.derangements >= 1 and w.size >= 2, w.exact, lower_bound=True),
            detail=f"|D|={a.derangements}, ω={w.size}",
        ))
    if n >= 3:
        checks.append(CheckResult(
            name="triangle",
            status=_status(w.size >= 3 and a.triangle, w.exact, lower_bound=True),
            detail=f"ω={w.size}",
        ))
    checks.append(CheckResult(
        name="clique-coclique",
        status=_status(a.clique_coclique_holds, w.exact and al.exact, lower_bound=False),
        detail=f"α·ω={a.clique_coclique_product} ≤ |G|={G.order}"
        + (" (α stopped at |G|//ω)" if a.alpha_ceiling_used else ""),
    ))
    if n >= 2:
        checks.append(CheckResult(
            name="quasiprimitive-series",
            status=CheckStatus.PASS if (a.series_length == 1) == a.quasiprimitive else CheckStatus.FAIL,
            detail=f"ℓ={a.series_length}, quasiprimitive={a.quasiprimitive}",
        ))
    chain = a.chain
    assert chain is not None
    checks.append(CheckResult(
        name="chain-clique",
        status=_status(
            chain.size >= chain.stated_lower_bound and chain.stated_lower_bound <= w.size,
            w.exact, lower_bound=True,
        ),
        detail=f"κ={chain.kappa}, |C|={chain.size}, 2^(κ−1)={chain.stated_lower_bound}, ω={w.size}",
    ))
    return result, a


def clique_free_envelope(analyses: Sequence[GroupAnalysis]) -> list[EnvelopeRow]:
    """For c = 3, 4, …: the largest degree of an analysed transitive group with ω < c."""
    exact = [a for a in analyses if a.transitive and a.omega.exact]
    if not exact:
        return []
    rows: list[EnvelopeRow] = []
    for c in range(3, max(a.omega.size for a in exact) + 2):
        below = [a for a in exact if a.omega.size < c]
        if below:
            best = max(below, key=lambda a: a.degree)
            rows.append(EnvelopeRow(c=c, max_degree=best.degree, group=best.name))
    return rows


# ============================================================================
# Kronecker
# ============================================================================

def kronecker_scan(entry: CatalogEntry, config: RunConfig, *, all_pairs: bool = False) -> KroneckerScanReport:
    """Classified subgroup pairs, pigeonhole checks on equivalent pairs, envelope."""
    G = entry.to_group(config.max_order)
    subgroups = all_subgroups(G, config.max_lattice_order)
    labels = subgroup_conjugacy_classes(G, subgroups)
    reports = scan_pairs(
        G,
        all_pairs=all_pairs,
        subgroups=subgroups,
        max_coset_degree=config.max_coset_degree,
    )

    rows: list[KroneckerRow] = []
    for r in reports:
        row = KroneckerRow(
            group=entry.name,
            indexU=r.U.index,
            indexUp=r.U_prime.index,
            orderU=r.U.order,
            orderUp=r.U_prime.order,
            generatorsU=_cycles(G, r.U.generator_indices),
            generatorsUp=_cycles(G, r.U_prime.generator_indices),
            equivalent=r.equivalent,
            conjugate=r.conjugate,
            classification=r.classification,
        )
        if r.equivalent:
            verdict = pigeonhole_bound_check(
                G, r.U, r.U_prime,
                report=r,
                node_budget=config.node_budget,
                max_vertices=config.max_graph_vertices,
                max_coset_degree=config.max_coset_degree,
            )
            row = row.model_copy(update={
                "omega_cosetU": verdict.omega.size,
                "omega_exact": verdict.omega_exact,
                "pigeonhole_holds": verdict.holds,
                "pigeonhole_exact": verdict.exact,
            })
        rows.append(row)

    return KroneckerScanReport(
        group=entry.name,
        order=G.order,
        subgroups=len(subgroups),
        classes=len(set(labels)),
        all_pairs=all_pairs,
        rows=rows,
        envelope=[EnvelopeEntry(n=n, max_index=m) for n, m in envelope(reports).items()],
        equivalence_relation=is_equivalence_relation(reports),
    )


# ============================================================================
# Partition-avoiding subsets
# ============================================================================

def avoidance_suite(seed: int, instances: int = 200) -> AvoidanceSuite:
    """Random instances of the partition-avoiding subset procedure, checked exactly."""
    rng = random.Random(seed)
    rows = []
    for k in range(instances):
        inst = random_instance(rng)
        Y = partition_avoiding_subset(inst.ground, inst.partitions, inst.a)
        rows.append(AvoidanceRow(
            instance=k,
            s=len(inst.ground),
            sigma=inst.sigma,
            a=inst.a,
            size=len(Y),
            bound_holds=avoidance_bound_holds(len(inst.ground), len(Y), inst.a, inst.sigma),
            avoids=avoids_all_parts(Y, inst.partitions),
        ))
    suite = AvoidanceSuite(seed=seed, instances=instances, rows=rows)
    logger.debug("avoidance suite seed=%d: %d failures", seed, suite.failures)
    return suite

"""
Kronecker equivalence of subgroup pairs.

Two subgroups U, U′ ≤ G are equivalent when their conjugate unions
⋃ U^g and ⋃ U′^g coincide. An element x fixes the coset Ug exactly when
x ∈ U^g, so the conjugate union of U is the set of elements fixing some coset
of U, and equivalence says the two coset actions have the same derangements.
Both readings are computed and compared on every pair.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from derangement_lab.analysis.dgraph import (
    DEFAULT_MAX_GRAPH_VERTICES,
    DEFAULT_NODE_BUDGET,
    CliqueResult,
    build_graph,
    clique_number,
    derangement_set,
    max_clique,
)
from derangement_lab.analysis.models import Classification
from derangement_lab.core.group import (
    DEFAULT_MAX_COSET_DEGREE,
    DEFAULT_MAX_LATTICE_ORDER,
    CosetAction,
    PermGroup,
    Subgroup,
    adopt,
    all_subgroups,
    conjugate_subgroup,
    coset_action,
    subgroup_conjugacy_classes,
)
from derangement_lab.core.partition import UnionFind
from derangement_lab.errors import ConstructionViolation, NotEquivalent

logger = logging.getLogger(__name__)

# node budget for trying exact ω before falling back to deciding ω ≤ n
EXACT_OMEGA_NODES = 5_000


@dataclass(frozen=True)
class ConjugateUnion:
    """⋃ U^g with the coset action it was cross-checked against."""

    subgroup: Subgroup
    mask: int
    action: CosetAction = field(repr=False)
    conjugates: tuple[int, ...] = field(repr=False)
    derangements: int = field(repr=False, default=0)


@dataclass(frozen=True)
class KroneckerReport:
    group: PermGroup
    U: Subgroup
    U_prime: Subgroup
    union_U: int
    union_U_prime: int
    equivalent: bool
    conjugate: bool
    action_U: CosetAction = field(repr=False)

    @property
    def indices(self) -> tuple[int, int]:
        return self.U.index, self.U_prime.index

    @property
    def classification(self) -> Classification:
        if self.conjugate:
            return Classification.CONJUGATE
        if self.equivalent:
            return Classification.EQUAL_UNION_NONCONJUGATE
        return Classification.INEQUIVALENT


@dataclass(frozen=True)
class PigeonholeVerdict:
    """
    Whether ω of G on the cosets of U is at most n = [G:U′].

    ``omega`` is the largest clique found; ``omega_exact`` says it is ω
    itself rather than a lower bound. ``exact`` says the verdict is proved.
    """

    n: int
    omega: CliqueResult
    omega_exact: bool
    exact: bool

    @property
    def holds(self) -> bool:
        return self.omega.size <= self.n


def _conjugate_union(G: PermGroup, U: Subgroup, max_coset_degree: int) -> ConjugateUnion:
    action = coset_action(G, U, max_coset_degree)
    conjugates: dict[int, None] = {}
    union = 0
    for r in action.representatives:
        V = conjugate_subgroup(U, r)
        conjugates.setdefault(V.mask)
        union |= V.mask
    if union != action.fixer_mask():
        raise ConstructionViolation(
            f"conjugate union of a subgroup of order {U.order} disagrees with its coset-action fixers",
        )
    derangements = derangement_set(G, action)
    if derangements != G.all_mask & ~union:
        raise ConstructionViolation("coset-action derangements are not the complement of the union")
    return ConjugateUnion(U, union, action, tuple(conjugates), derangements)


def conjugate_union(
    G: PermGroup,
    U: Subgroup,
    max_coset_degree: int = DEFAULT_MAX_COSET_DEGREE,
) -> int:
    """
    Bitset of ⋃_{g∈G} U^g.

    Raises:
        NotASubgroup: U is not contained in G.
    """
    return _conjugate_union(G, adopt(G, U), max_coset_degree).mask


def _report(G: PermGroup, a: ConjugateUnion, b: ConjugateUnion) -> KroneckerReport:
    equivalent = a.mask == b.mask
    conjugate = a.subgroup.order == b.subgroup.order and b.subgroup.mask in a.conjugates
    if (a.derangements == b.derangements) != equivalent:
        raise ConstructionViolation("conjugate unions and coset-action derangements disagree")
    if conjugate and not equivalent:
        raise ConstructionViolation("conjugate subgroups with different unions")
    return KroneckerReport(
        group=G,
        U=a.subgroup,
        U_prime=b.subgroup,
        union_U=a.mask,
        union_U_prime=b.mask,
        equivalent=equivalent,
        conjugate=conjugate,
        action_U=a.action,
    )


def kronecker_equivalent(
    G: PermGroup,
    U: Subgroup,
    U_prime: Subgroup,
    max_coset_degree: int = DEFAULT_MAX_COSET_DEGREE,
) -> KroneckerReport:
    """
    Compare the conjugate unions of U and U′.

    Also checks that the verdict matches equality of the derangement sets of
    the two coset actions pulled back to G.

    Raises:
        NotASubgroup: U or U′ is not contained in G.
    """
    a = _conjugate_union(G, adopt(G, U), max_coset_degree)
    b = _conjugate_union(G, adopt(G, U_prime), max_coset_degree)
    return _report(G, a, b)


def pigeonhole_bound_check(
    G: PermGroup,
    U: Subgroup,
    U_prime: Subgroup,
    *,
    report: KroneckerReport | None = None,
    node_budget: int = DEFAULT_NODE_BUDGET,
    max_vertices: int = DEFAULT_MAX_GRAPH_VERTICES,
    max_coset_degree: int = DEFAULT_MAX_COSET_DEGREE,
) -> PigeonholeVerdict:
    """
    ω of the derangement graph of G on the cosets of U, against n = [G:U′].

    Any n + 1 elements contain two in one right coset of U′; their quotient
    lies in U′ and hence in some U^g, so it fixes a coset of U and the two
    are not adjacent. So ω ≤ n must come out of the solver.

    Raises:
        NotEquivalent: U and U′ are not Kronecker equivalent.
    """
    if report is None:
        report = kronecker_equivalent(G, U, U_prime, max_coset_degree)
    if not report.equivalent:
        raise NotEquivalent(
            f"subgroups of index {report.U.index} and {report.U_prime.index} are not equivalent",
        )
    n = report.U_prime.index
    graph = build_graph(G, report.action_U, max_vertices)
    # one past n is enough to refute the bound
    omega = clique_number(graph, min(node_budget, EXACT_OMEGA_NODES), ceiling=n + 1)
    if omega.exact:
        verdict = PigeonholeVerdict(n, omega, omega_exact=omega.size <= n or omega.size == graph.action_degree, exact=True)
    else:
        decided = max_clique(
            graph.adjacency,
            incumbent=omega.witness,
            ceiling=n + 1,
            floor=n,
            node_budget=node_budget,
        )
        verdict = PigeonholeVerdict(n, decided, omega_exact=False, exact=decided.exact)
    if verdict.exact and not verdict.holds:
        logger.warning("pigeonhole bound fails: clique of %d > n %d", verdict.omega.size, n)
    return verdict


def scan_pairs(
    G: PermGroup,
    *,
    all_pairs: bool = False,
    subgroups: Sequence[Subgroup] | None = None,
    max_lattice_order: int = DEFAULT_MAX_LATTICE_ORDER,
    max_coset_degree: int = DEFAULT_MAX_COSET_DEGREE,
) -> list[KroneckerReport]:
    """
    Classify subgroup pairs of G.

    By default one subgroup per conjugacy class is used and pairs (i, j) with
    i ≤ j are reported; equivalence is constant on conjugacy classes, so
    nothing is lost. ``all_pairs`` reports every unordered pair of subgroups.
    A precomputed ``subgroups`` list (all of them, sorted) skips the lattice
    search.

    Raises:
        OrderCapExceeded: the subgroup lattice is beyond ``max_lattice_order``.
    """
    if subgroups is None:
        subgroups = all_subgroups(G, max_lattice_order)
    labels = subgroup_conjugacy_classes(G, subgroups)
    if all_pairs:
        chosen = subgroups
    else:
        first: dict[int, Subgroup] = {}
        for U, label in zip(subgroups, labels):
            first.setdefault(label, U)
        chosen = list(first.values())

    unions = [_conjugate_union(G, U, max_coset_degree) for U in chosen]
    reports = [
        _report(G, unions[i], unions[j])
        for i in range(len(chosen))
        for j in range(i, len(chosen))
    ]
    logger.debug(
        "%s: %d subgroups in %d classes, %d pairs scanned",
        G.name or "group", len(subgroups), len(set(labels)), len(reports),
    )
    return reports


def envelope(reports: Iterable[KroneckerReport]) -> dict[int, int]:
    """For each n = [G:U′], the largest [G:U] among equivalent pairs (both orientations)."""
    table: dict[int, int] = {}
    for r in reports:
        if not r.equivalent:
            continue
        a, b = r.indices
        table[b] = max(table.get(b, 0), a)
        table[a] = max(table.get(a, 0), b)
    return dict(sorted(table.items()))


def is_equivalence_relation(reports: Iterable[KroneckerReport]) -> bool:
    """
    Reflexive, symmetric and transitive on the subgroups appearing in ``reports``.

    Pairs are unordered so symmetry is structural; the check merges
    equivalent pairs and requires every reported pair inside a merged class
    to be equivalent, and every diagonal pair to be equivalent.
    """
    reports = list(reports)
    keys: dict[int, int] = {}
    for r in reports:
        keys.setdefault(r.U.mask, len(keys))
        keys.setdefault(r.U_prime.mask, len(keys))
    uf = UnionFind(len(keys))
    for r in reports:
        if r.U.mask == r.U_prime.mask and not r.equivalent:
            return False
        if r.equivalent:
            uf.union(keys[r.U.mask], keys[r.U_prime.mask])
    return all(
        r.equivalent == (uf.find(keys[r.U.mask]) == uf.find(keys[r.U_prime.mask]))
        for r in reports
    )

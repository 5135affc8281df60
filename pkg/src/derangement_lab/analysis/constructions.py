"""
Constructive procedures: partition-avoiding subsets and the product clique
built along a normal imprimitivity series.
"""
from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass
from typing import Hashable, Sequence, TypeVar

from derangement_lab.analysis.blocks import NormalSeries, max_normal_series, validate_series
from derangement_lab.core.group import PermGroup, Subgroup
from derangement_lab.core.partition import Partition
from derangement_lab.errors import (
    ConstructionViolation,
    InvalidPartition,
    NotTransitive,
    PartTooSmall,
)

logger = logging.getLogger(__name__)

T = TypeVar("T", bound=Hashable)


# ============================================================================
# Partition-avoiding subsets
# ============================================================================

def _check_family(X: Sequence[T], partitions: Sequence[Sequence[Sequence[T]]], a: int) -> None:
    if a < 1:
        raise PartTooSmall(f"part size bound a must be >= 1, got {a}")
    ground = set(X)
    if len(ground) != len(X):
        raise InvalidPartition("ground sequence has repeated elements")
    for k, pi in enumerate(partitions):
        covered: set[T] = set()
        for part in pi:
            if len(part) < a:
                raise PartTooSmall(f"partition {k + 1} has a part of size {len(part)} < {a}")
            members = set(part)
            if len(members) != len(part) or members & covered or not members <= ground:
                raise InvalidPartition(f"partition {k + 1} is not a partition of the ground set")
            covered |= members
        if covered != ground:
            raise InvalidPartition(f"partition {k + 1} does not cover the ground set")


def partition_avoiding_subset(
    X: Sequence[T],
    partitions: Sequence[Sequence[Sequence[T]]],
    a: int,
) -> list[T]:
    """
    A subset Y of X containing no whole part of any partition.

    Partitions are processed in order; every part still wholly inside the
    survivors loses its first element in X's order. At most |Y|/a parts can
    be wholly inside, so each round keeps a (1 − 1/a) fraction and
    |Y| ≥ |X|·(1 − 1/a)^σ. Y is returned in X's order.

    Raises:
        PartTooSmall: some part has fewer than ``a`` elements.
        InvalidPartition: some member of ``partitions`` does not partition X.
    """
    _check_family(X, partitions, a)
    position = {x: i for i, x in enumerate(X)}
    alive = set(X)
    for pi in partitions:
        for part in pi:
            if all(x in alive for x in part):
                alive.discard(min(part, key=position.__getitem__))
    return [x for x in X if x in alive]


def avoidance_bound_holds(s: int, size: int, a: int, sigma: int) -> bool:
    """``size ≥ s·(1 − 1/a)^σ``, compared exactly in integers."""
    return size * a**sigma >= s * (a - 1) ** sigma


def avoids_all_parts(Y: Sequence[T], partitions: Sequence[Sequence[Sequence[T]]]) -> bool:
    kept = set(Y)
    return not any(set(part) <= kept for pi in partitions for part in pi)


@dataclass(frozen=True)
class AvoidanceInstance:
    ground: list[int]
    partitions: list[list[list[int]]]
    a: int

    @property
    def sigma(self) -> int:
        return len(self.partitions)


def random_instance(
    rng: random.Random,
    *,
    max_size: int = 40,
    max_sigma: int = 6,
    part_bounds: Sequence[int] = (2, 3, 4),
) -> AvoidanceInstance:
    """Random ground set with σ random partitions whose parts all have ≥ a points."""
    a = rng.choice(list(part_bounds))
    s = rng.randint(a, max_size)
    sigma = rng.randint(0, max_sigma)
    ground = list(range(s))
    partitions = []
    for _ in range(sigma):
        points = ground[:]
        rng.shuffle(points)
        parts: list[list[int]] = []
        while points:
            take = rng.randint(a, max(a, min(len(points), 2 * a)))
            parts.append(points[:take])
            points = points[take:]
            if 0 < len(points) < a:
                parts[-1].extend(points)
                points = []
        partitions.append(parts)
    return AvoidanceInstance(ground, partitions, a)


# ============================================================================
# Chain clique
# ============================================================================

@dataclass(frozen=True)
class ChainCliqueCertificate:
    """
    Indices 0 = i_0 < … < i_κ, witnesses g_{i_0}, …, g_{i_{κ−1}} and the
    clique of all products g_{i_0}^{ε_0} ⋯ g_{i_{κ−1}}^{ε_{κ−1}}.
    """

    series: NormalSeries
    indices: tuple[int, ...]
    witnesses: tuple[int, ...]
    clique: tuple[int, ...]

    @property
    def kappa(self) -> int:
        return len(self.witnesses)

    @property
    def size(self) -> int:
        return len(self.clique)

    @property
    def stated_lower_bound(self) -> int:
        """2^(κ−1), or 1 when κ = 0."""
        return 1 << (self.kappa - 1) if self.kappa else 1


def _deranges_blocks(img: tuple[int, ...], blocks: Partition, where: list[int]) -> bool:
    """The element moves every block of ``blocks`` to a different block."""
    return all(where[img[block[0]]] != k for k, block in enumerate(blocks))


def _first_deranging(K: Subgroup, blocks: Partition, where: list[int]) -> int | None:
    images = K.parent.images
    for i in K.elements:
        if _deranges_blocks(images[i], blocks, where):
            return i
    return None


def build_chain_indices(
    G: PermGroup,
    series: NormalSeries | None = None,
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """
    Indices i_j and derangement witnesses along a normal series.

    i_{j+1} is the least x > i_j for which G_(Σ_{i_j}) has an element
    fixing no block of Σ_x; that element (smallest index) is g_{i_j}. A
    derangement on Σ_x also deranges every finer system, so when the kernel
    has no derangement on Ω the scan stops.

    Raises:
        NotTransitive: G is intransitive.
        InvalidSeries: ``series`` breaks a series invariant.
    """
    if not G.is_transitive():
        raise NotTransitive(f"{G.name or 'group'} is not transitive")
    if series is None:
        series = max_normal_series(G)
    validate_series(G, series)
    ell = series.length
    indices = [0]
    witnesses: list[int] = []
    while indices[-1] < ell:
        K = series.kernel(indices[-1])
        finest = series.sigma(ell)
        if _first_deranging(K, finest.blocks, finest.block_of) is None:
            break
        for x in range(indices[-1] + 1, ell + 1):
            target = series.sigma(x)
            g = _first_deranging(K, target.blocks, target.block_of)
            if g is not None:
                witnesses.append(g)
                indices.append(x)
                break
    return tuple(indices), tuple(witnesses)


def _is_derangement_image(img: tuple[int, ...]) -> bool:
    return all(x != p for p, x in enumerate(img))


def _check_conditions(G: PermGroup, series: NormalSeries, indices: Sequence[int], witnesses: Sequence[int]) -> None:
    images = G.images
    for j, g in enumerate(witnesses):
        K = series.kernel(indices[j])
        if g not in K:
            raise ConstructionViolation(f"witness {j} lies outside the kernel of Σ_{indices[j]}")
        nxt = series.sigma(indices[j + 1])
        if not _deranges_blocks(images[g], nxt.blocks, nxt.block_of):
            raise ConstructionViolation(f"witness {j} fixes a block of Σ_{indices[j + 1]}")
        for x in range(indices[j] + 1, indices[j + 1]):
            mid = series.sigma(x)
            if _first_deranging(K, mid.blocks, mid.block_of) is not None:
                raise ConstructionViolation(f"kernel of Σ_{indices[j]} already deranges Σ_{x}")


def chain_clique(G: PermGroup, series: NormalSeries | None = None) -> ChainCliqueCertificate:
    """
    All exponent products of the chain witnesses, verified as a clique of Γ_G.

    Every pair of distinct members is checked directly: x·y⁻¹ must fix no
    point. The size is asserted against 2^(κ−1) and the actual count is kept.

    Raises:
        ConstructionViolation: a verification step fails.
    """
    if series is None:
        series = max_normal_series(G)
    indices, witnesses = build_chain_indices(G, series)
    _check_conditions(G, series, indices, witnesses)

    members: set[int] = set()
    for exponents in itertools.product((0, 1), repeat=len(witnesses)):
        h = 0
        for e, g in zip(exponents, witnesses):
            if e:
                h = G.mul(h, g)
        members.add(h)
    clique = tuple(sorted(members))

    images = G.images
    for i, x in enumerate(clique):
        for y in clique[i + 1:]:
            if not _is_derangement_image(images[G.mul(x, G.inv(y))]):
                raise ConstructionViolation(
                    f"chain products {G.element(x)} and {G.element(y)} share a fixed point",
                )

    cert = ChainCliqueCertificate(series, indices, witnesses, clique)
    if cert.size < cert.stated_lower_bound:
        raise ConstructionViolation(
            f"chain clique has {cert.size} elements, below 2^(κ−1) = {cert.stated_lower_bound}",
        )
    if cert.size != cert.stated_lower_bound:
        logger.info(
            "%s: chain clique has %d elements for κ=%d (stated bound %d)",
            G.name or "group", cert.size, cert.kappa, cert.stated_lower_bound,
        )
    return cert

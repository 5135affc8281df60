"""
Systems of imprimitivity and normal imprimitivity series.

A block system Σ is normal when some normal subgroup N has the blocks of Σ
as its orbits. We never search for N: if such an N exists it fixes every
block, so N ≤ G_(Σ), the kernel of the action on Σ. The kernel's orbits lie
inside blocks (it fixes them) and contain the N-orbits (it contains N), so
they are exactly the blocks. Conversely G_(Σ) is itself normal. Hence

    Σ is normal  ⇔  the orbits of G_(Σ) are the blocks of Σ,

and G_(Σ) is the witness we report.

Series follow the chain convention

    discrete = Σ_ℓ < Σ_{ℓ−1} < … < Σ_1 < Σ_0 = {Ω}

with ℓ counting strict refinements, so a quasiprimitive group has ℓ = 1.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from derangement_lab.core.group import (
    PermGroup,
    Subgroup,
    bits_of,
    conjugacy_classes,
    normal_closure,
    subgroup_sort_key,
)
from derangement_lab.core.partition import (
    Partition,
    UnionFind,
    block_index,
    canonical,
    discrete,
    is_partition_of,
    refines,
    trivial,
)
from derangement_lab.errors import (
    InvalidSeries,
    NotABlockSystem,
    NotTransitive,
    PointOutOfRange,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BlockSystem:
    """A G-invariant uniform partition, optionally certified normal."""

    degree: int
    blocks: Partition
    is_normal: bool = False
    witness_kernel: Subgroup | None = None

    @cached_property
    def block_of(self) -> list[int]:
        return block_index(self.blocks, self.degree)

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    @property
    def is_discrete(self) -> bool:
        return len(self.blocks) == self.degree

    @property
    def is_trivial(self) -> bool:
        return len(self.blocks) == 1


@dataclass(frozen=True)
class NormalSeries:
    """
    A chain of normal block systems from the discrete partition to {Ω}.

    ``chain`` and ``kernels`` are stored finest first, i.e. as
    [Σ_ℓ, …, Σ_0] and [G_(Σ_ℓ), …, G_(Σ_0)].
    """

    group: PermGroup
    chain: tuple[BlockSystem, ...]
    kernels: tuple[Subgroup, ...]

    @property
    def length(self) -> int:
        """ℓ: number of strict refinement steps."""
        return len(self.chain) - 1

    @property
    def interior_length(self) -> int:
        """Number of proper non-trivial systems in the chain."""
        return max(len(self.chain) - 2, 0)

    def sigma(self, i: int) -> BlockSystem:
        """Σ_i, counted from the coarse end (Σ_0 = {Ω})."""
        return self.chain[self.length - i]

    def kernel(self, i: int) -> Subgroup:
        return self.kernels[self.length - i]


# ----------------------------------------------------------------------------
# Invariance and construction
# ----------------------------------------------------------------------------

def _require_transitive(G: PermGroup) -> None:
    if not G.is_transitive():
        raise NotTransitive(f"{G.name or 'group'} is not transitive")


def is_invariant(G: PermGroup, partition: Partition) -> bool:
    where = block_index(partition, G.degree)
    for g in G.generators:
        img = g.images
        for block in partition:
            target = where[img[block[0]]]
            if any(where[img[p]] != target for p in block):
                return False
    return True


def block_system(G: PermGroup, blocks: Sequence[Sequence[int]]) -> BlockSystem:
    """Validate ``blocks`` as a uniform G-invariant partition."""
    partition = canonical(blocks)
    if not is_partition_of(partition, G.degree):
        raise NotABlockSystem("blocks do not partition the point set")
    if len({len(b) for b in partition}) != 1:
        raise NotABlockSystem("blocks have unequal sizes")
    if not is_invariant(G, partition):
        raise NotABlockSystem(f"partition is not invariant under {G.name or 'the group'}")
    return BlockSystem(G.degree, partition)


def minimal_block_system(G: PermGroup, alpha: int, beta: int) -> BlockSystem:
    """Finest G-invariant partition with alpha and beta in one block."""
    _require_transitive(G)
    for p in (alpha, beta):
        if not 0 <= p < G.degree:
            raise PointOutOfRange(f"point {p} outside 0..{G.degree - 1}")
    uf = UnionFind(G.degree)
    queue = deque()
    if uf.union(alpha, beta):
        queue.append((alpha, beta))
    gens = [g.images for g in G.generators]
    while queue:
        x, y = queue.popleft()
        for g in gens:
            gx, gy = g[x], g[y]
            if uf.union(gx, gy):
                queue.append((gx, gy))
    return BlockSystem(G.degree, uf.classes())


def is_primitive(G: PermGroup) -> bool:
    """Transitive with no block system other than the discrete one and {Ω}."""
    if not G.is_transitive():
        return False
    return all(
        minimal_block_system(G, 0, beta).is_trivial for beta in range(1, G.degree)
    )


# ----------------------------------------------------------------------------
# Kernels and normality
# ----------------------------------------------------------------------------

def block_kernel(G: PermGroup, system: BlockSystem | Partition) -> Subgroup:
    """G_(Σ): all elements mapping every block to itself."""
    blocks = system.blocks if isinstance(system, BlockSystem) else canonical(system)
    if not is_partition_of(blocks, G.degree):
        raise NotABlockSystem(f"blocks do not partition the {G.degree} points")
    if not is_invariant(G, blocks):
        raise NotABlockSystem(f"partition is not invariant under {G.name or 'the group'}")
    where = block_index(blocks, G.degree)
    reps = [(b[0], k) for k, b in enumerate(blocks)]
    mask = bits_of(
        i for i, img in enumerate(G.images)
        if all(where[img[p]] == k for p, k in reps)
    )
    return Subgroup(G, mask)


def is_normal_system(G: PermGroup, system: BlockSystem | Partition) -> tuple[bool, Subgroup | None]:
    """``(True, G_(Σ))`` if Σ is normal, else ``(False, None)``."""
    blocks = system.blocks if isinstance(system, BlockSystem) else canonical(system)
    kernel = block_kernel(G, blocks)
    if kernel.orbits() == blocks:
        return True, kernel
    return False, None


def certify(G: PermGroup, system: BlockSystem) -> BlockSystem:
    """Copy of ``system`` with the normality verdict and witness filled in."""
    normal, witness = is_normal_system(G, system)
    return BlockSystem(system.degree, system.blocks, normal, witness)


# ----------------------------------------------------------------------------
# Normal subgroups and normal partitions
# ----------------------------------------------------------------------------

def normal_subgroups(G: PermGroup) -> list[Subgroup]:
    """
    All normal subgroups of G.

    Atoms are normal closures of single elements (one per conjugacy class);
    every normal subgroup is the join of the atoms of its elements, so
    closing the atoms under join reaches all of them.
    """
    atoms: dict[int, Subgroup] = {}
    for cls in conjugacy_classes(G):
        if cls[0] == 0:
            continue
        N = normal_closure(G, [cls[0]])
        atoms.setdefault(N.mask, N)
    found: dict[int, Subgroup] = {1: G.trivial()}
    found.update(atoms)
    queue = deque(atoms.values())
    while queue:
        N = queue.popleft()
        for A in atoms.values():
            J = N.join(A)
            if J.mask not in found:
                found[J.mask] = J
                queue.append(J)
    logger.debug("%s: %d normal subgroups from %d atoms", G.name or "group", len(found), len(atoms))
    return sorted(found.values(), key=subgroup_sort_key)


def minimal_normal_subgroups(G: PermGroup) -> list[Subgroup]:
    nontrivial = [N for N in normal_subgroups(G) if N.order > 1]
    return [
        N for N in nontrivial
        if not any(M.mask != N.mask and M.is_subgroup_of(N) for M in nontrivial)
    ]


def is_quasiprimitive(G: PermGroup) -> bool:
    """Every non-trivial normal subgroup is transitive."""
    if not G.is_transitive():
        return False
    return all(N.is_transitive() for N in normal_subgroups(G) if N.order > 1)


def is_innately_transitive(G: PermGroup) -> bool:
    """Some minimal normal subgroup is transitive."""
    if not G.is_transitive():
        return False
    if G.order == 1:
        return True
    return any(N.is_transitive() for N in minimal_normal_subgroups(G))


def _partition_key(system: BlockSystem) -> tuple[int, Partition]:
    return -system.block_count, system.blocks


def normal_partitions(G: PermGroup) -> list[BlockSystem]:
    """
    Every orbit partition of a normal subgroup, finest first.

    Always contains the discrete partition (N = 1) and {Ω} (N = G). The
    witness attached to each is the block kernel, the largest normal
    subgroup with those orbits.
    """
    _require_transitive(G)
    seen: dict[Partition, BlockSystem] = {}
    for N in normal_subgroups(G):
        blocks = N.orbits()
        if blocks not in seen:
            seen[blocks] = BlockSystem(G.degree, blocks, True, block_kernel(G, blocks))
    return sorted(seen.values(), key=_partition_key)


# ----------------------------------------------------------------------------
# Series
# ----------------------------------------------------------------------------

def max_normal_series(G: PermGroup) -> NormalSeries:
    """
    A longest chain of normal partitions from discrete to {Ω}.

    Longest path in the refinement DAG; among longest chains the
    lexicographically smallest sequence of partitions wins.
    """
    systems = normal_partitions(G)
    n = G.degree
    # coarsest first: every strict coarsening of a system precedes it
    ordered = sorted(systems, key=lambda s: (s.block_count, s.blocks))
    height: dict[Partition, int] = {}
    above: dict[Partition, list[BlockSystem]] = {}
    for s in ordered:
        coarser = [
            t for t in ordered
            if t.block_count < s.block_count and refines(s.blocks, t.blocks, n)
        ]
        above[s.blocks] = coarser
        height[s.blocks] = max((1 + height[t.blocks] for t in coarser), default=0)

    current = systems[0]
    if not current.is_discrete:
        raise InvalidSeries("discrete partition missing from normal partitions")
    chain = [current]
    while height[current.blocks] > 0:
        need = height[current.blocks] - 1
        current = min(
            (t for t in above[current.blocks] if height[t.blocks] == need),
            key=lambda t: t.blocks,
        )
        chain.append(current)
    kernels = tuple(s.witness_kernel for s in chain)  # type: ignore[misc]
    series = NormalSeries(G, tuple(chain), kernels)
    logger.debug("%s: normal series length %d", G.name or "group", series.length)
    return series


def validate_series(G: PermGroup, series: NormalSeries) -> None:
    """Raise ``InvalidSeries`` unless the chain meets its invariants."""
    if series.group is not G:
        raise InvalidSeries("series belongs to a different group")
    chain = series.chain
    if not chain or len(series.kernels) != len(chain):
        raise InvalidSeries("chain and kernel lists must be non-empty and aligned")
    if chain[0].blocks != discrete(G.degree):
        raise InvalidSeries("series must start at the discrete partition")
    if chain[-1].blocks != trivial(G.degree):
        raise InvalidSeries("series must end at the one-block partition")
    for fine, coarse in zip(chain, chain[1:]):
        if fine.blocks == coarse.blocks or not refines(fine.blocks, coarse.blocks, G.degree):
            raise InvalidSeries("each system must strictly refine the next")
    for system, kernel in zip(chain, series.kernels):
        normal, witness = is_normal_system(G, system)
        if not normal or witness is None or witness.mask != kernel.mask:
            raise InvalidSeries("every system must be normal with its block kernel attached")
    for small, big in zip(series.kernels, series.kernels[1:]):
        if not small.is_subgroup_of(big):
            raise InvalidSeries("kernels must ascend along the chain")

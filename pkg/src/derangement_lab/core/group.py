"""
Finite permutation groups by full enumeration.

A ``PermGroup`` is a degree plus generators; its elements are enumerated on
demand by breadth-first closure and stored sorted lexicographically on their
image tuples. Element *indices* into that sorted table are what every other
module works with: vertex ``i`` of a derangement graph, bit ``i`` of an
element bitset, and so on. The identity is always index 0.

Subsets of a group are Python ``int`` bitsets over element indices.

No stabilizer chains: desk scale (order ≤ ~10^5) keeps everything exact and
auditable.

Example:
    G = enumerate_group([parse_cycles("(1 2)", 4), parse_cycles("(1 2 3 4)", 4)], 4)
    G.order                          # 24
    point_stabilizer(G, 0).order     # 6
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from derangement_lab.core.partition import Partition, UnionFind
from derangement_lab.core.permutation import Permutation, identity
from derangement_lab.errors import (
    DegreeMismatch,
    NotAnElement,
    NotASubgroup,
    OrderCapExceeded,
    PointOutOfRange,
)

logger = logging.getLogger(__name__)

DEFAULT_MAX_ORDER = 100_000
DEFAULT_MAX_LATTICE_ORDER = 2_000
DEFAULT_MAX_COSET_DEGREE = 5_040

# Groups up to this order get a full multiplication table.
_TABLE_LIMIT = 512


def iter_bits(mask: int) -> Iterable[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


class PermGroup:
    """
    A permutation group of a given degree, enumerated lazily.

    Args:
        degree: number of points acted on (Ω = {0, …, degree−1})
        generators: generating permutations (may be empty: trivial group)
        name: label used in reports
        max_order: enumeration cap; exceeding it raises ``OrderCapExceeded``
    """

    def __init__(
        self,
        degree: int,
        generators: Sequence[Permutation],
        *,
        name: str = "",
        max_order: int = DEFAULT_MAX_ORDER,
    ):
        if degree < 1:
            raise PointOutOfRange("degree must be positive")
        for g in generators:
            if g.degree != degree:
                raise DegreeMismatch(
                    f"generator {g} has degree {g.degree}, group has degree {degree}"
                )
        if max_order < 1:
            raise ValueError("max_order must be >= 1")
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(generators)
        self.name = name
        self.max_order = max_order
        self._images: list[tuple[int, ...]] | None = None
        self._index: dict[tuple[int, ...], int] = {}
        self._parent: list[int] = []
        self._via: list[int] = []
        self._bfs: list[int] = []
        self._gen_idx: list[int] = []

    def __repr__(self) -> str:
        label = self.name or "PermGroup"
        order = len(self._images) if self._images is not None else "?"
        return f"<{label} degree={self.degree} order={order}>"

    # ------------------------------------------------------------------------
    # Enumeration
    # ------------------------------------------------------------------------

    def _enumerate(self) -> None:
        ident = tuple(range(self.degree))
        gens = [g.images for g in self.generators]
        found: dict[tuple[int, ...], tuple[tuple[int, ...] | None, int]] = {ident: (None, -1)}
        discovery = [ident]
        frontier = [ident]
        while frontier:
            nxt: list[tuple[int, ...]] = []
            for e in frontier:
                for k, g in enumerate(gens):
                    f = tuple(g[i] for i in e)
                    if f not in found:
                        found[f] = (e, k)
                        discovery.append(f)
                        nxt.append(f)
                        if len(found) > self.max_order:
                            raise OrderCapExceeded(
                                f"{self.name or 'group'} has order > {self.max_order}",
                                hint="raise --max-order (the instance is beyond desk scale)",
                            )
            frontier = nxt

        images = sorted(found)
        index = {img: i for i, img in enumerate(images)}
        parent = [0] * len(images)
        via = [-1] * len(images)
        for img, (par, k) in found.items():
            if par is not None:
                parent[index[img]] = index[par]
                via[index[img]] = k
        self._images = images
        self._index = index
        self._parent = parent
        self._via = via
        self._bfs = [index[img] for img in discovery]
        self._gen_idx = [index[g] for g in gens]
        logger.debug("enumerated %s: order %d", self.name or "group", len(images))

    @property
    def images(self) -> list[tuple[int, ...]]:
        """Image tuples of all elements in canonical (lexicographic) order."""
        if self._images is None:
            self._enumerate()
        return self._images  # type: ignore[return-value]

    @property
    def order(self) -> int:
        return len(self.images)

    @property
    def elements(self) -> list[Permutation]:
        return [Permutation(img) for img in self.images]

    @property
    def all_mask(self) -> int:
        return (1 << self.order) - 1

    @property
    def generator_indices(self) -> list[int]:
        self.images
        return list(self._gen_idx)

    def element(self, i: int) -> Permutation:
        return Permutation(self.images[i])

    def index_of(self, p: Permutation | tuple[int, ...]) -> int:
        """Index of an element; ``NotAnElement`` if it is not in the group."""
        img = p.images if isinstance(p, Permutation) else tuple(p)
        self.images
        try:
            return self._index[img]
        except KeyError:
            raise NotAnElement(f"{Permutation(img)} is not an element of {self.name or 'the group'}") from None

    def contains(self, p: Permutation) -> bool:
        self.images
        return p.images in self._index

    def word_parent(self, i: int) -> tuple[int, int]:
        """``(parent, k)`` with element ``i`` = parent · generator[k] (identity: (0, -1))."""
        self.images
        return self._parent[i], self._via[i]

    @property
    def bfs_order(self) -> list[int]:
        """Element indices in discovery order; every parent precedes its children."""
        self.images
        return list(self._bfs)

    # ------------------------------------------------------------------------
    # Arithmetic on indices
    # ------------------------------------------------------------------------

    @cached_property
    def _table(self) -> list[list[int]] | None:
        if self.order > _TABLE_LIMIT:
            return None
        imgs, index = self.images, self._index
        return [[index[tuple(b[i] for i in a)] for b in imgs] for a in imgs]

    def mul(self, i: int, j: int) -> int:
        """Index of element ``i`` followed by element ``j``."""
        table = self._table
        if table is not None:
            return table[i][j]
        a, b = self.images[i], self.images[j]
        return self._index[tuple(b[x] for x in a)]

    @cached_property
    def _inverses(self) -> list[int]:
        out = []
        for img in self.images:
            inv = [0] * self.degree
            for i, x in enumerate(img):
                inv[x] = i
            out.append(self._index[tuple(inv)])
        return out

    def inv(self, i: int) -> int:
        return self._inverses[i]

    def conj(self, i: int, g: int) -> int:
        """Index of g⁻¹ · e_i · g."""
        return self.mul(self.mul(self.inv(g), i), g)

    @cached_property
    def _conj_by_generators(self) -> list[list[int]]:
        return [[self.conj(i, g) for i in range(self.order)] for g in self._gen_idx]

    def closure(self, gens: Iterable[int]) -> int:
        """Bitset of the subgroup generated by the given element indices."""
        gens = [g for g in dict.fromkeys(gens) if g != 0]
        members = {0}
        frontier = [0]
        table = self._table
        while frontier:
            nxt = []
            for e in frontier:
                row = table[e] if table is not None else None
                for g in gens:
                    f = row[g] if row is not None else self.mul(e, g)
                    if f not in members:
                        members.add(f)
                        nxt.append(f)
            frontier = nxt
        return bits_of(members)

    # ------------------------------------------------------------------------
    # Action on points
    # ------------------------------------------------------------------------

    def orbits(self) -> Partition:
        return orbits_under(self.degree, (g.images for g in self.generators))

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def fixers_of(self, point: int) -> int:
        """Bitset of elements fixing ``point``."""
        if not 0 <= point < self.degree:
            raise PointOutOfRange(f"point {point} outside 0..{self.degree - 1}")
        return bits_of(i for i, img in enumerate(self.images) if img[point] == point)

    def subgroup(self, mask: int, generators: Sequence[int] | None = None) -> "Subgroup":
        return Subgroup(self, mask, tuple(generators) if generators is not None else None)

    def whole(self) -> "Subgroup":
        return Subgroup(self, self.all_mask, tuple(self.generator_indices))

    def trivial(self) -> "Subgroup":
        return Subgroup(self, 1, ())


def orbits_under(degree: int, images: Iterable[Sequence[int]]) -> Partition:
    """Orbits of the group generated by permutations given as image tuples."""
    uf = UnionFind(degree)
    for img in images:
        for x, y in enumerate(img):
            uf.union(x, y)
    return uf.classes()


def enumerate_group(
    generators: Sequence[Permutation],
    degree: int,
    max_order: int = DEFAULT_MAX_ORDER,
    *,
    name: str = "",
) -> PermGroup:
    """Build and fully enumerate ⟨generators⟩; raises ``OrderCapExceeded`` past the cap."""
    group = PermGroup(degree, generators, name=name, max_order=max_order)
    group.images
    return group


# ============================================================================
# Subgroups
# ============================================================================

@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of ``parent``, held as an element bitset."""

    parent: PermGroup
    mask: int
    _gens: tuple[int, ...] | None = field(default=None, repr=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((id(self.parent), self.mask))

    def __repr__(self) -> str:
        return f"<Subgroup order={self.order} of {self.parent!r}>"

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    @cached_property
    def elements(self) -> list[int]:
        return list(iter_bits(self.mask))

    @property
    def permutations(self) -> list[Permutation]:
        return [self.parent.element(i) for i in self.elements]

    def __contains__(self, i: int) -> bool:
        return bool(self.mask >> i & 1)

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return self.parent is other.parent and self.mask & ~other.mask == 0

    @cached_property
    def generator_indices(self) -> tuple[int, ...]:
        """Given generators, or a greedy generating set picked in index order."""
        if self._gens is not None:
            return tuple(g for g in self._gens if g != 0)
        gens: list[int] = []
        span = 1
        for i in self.elements:
            if not span >> i & 1:
                gens.append(i)
                span = self.parent.closure(gens)
                if span == self.mask:
                    break
        return tuple(gens)

    @property
    def generators(self) -> list[Permutation]:
        return [self.parent.element(i) for i in self.generator_indices]

    def orbits(self) -> Partition:
        imgs = self.parent.images
        return orbits_under(self.parent.degree, (imgs[g] for g in self.generator_indices))

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def join(self, other: "Subgroup") -> "Subgroup":
        if other.mask & ~self.mask == 0:
            return self
        if self.mask & ~other.mask == 0:
            return other
        gens = self.generator_indices + other.generator_indices
        return Subgroup(self.parent, self.parent.closure(gens), gens)


def adopt(G: PermGroup, U: Subgroup) -> Subgroup:
    """U as a subgroup of G itself; ``NotASubgroup`` if any element is missing."""
    if U.parent is G:
        return U
    if U.parent.degree != G.degree:
        raise NotASubgroup(f"subgroup of degree {U.parent.degree} cannot lie in degree {G.degree}")
    try:
        idx = [G.index_of(U.parent.images[i]) for i in U.elements]
    except NotAnElement as exc:
        raise NotASubgroup(f"subgroup element outside {G.name or 'the group'}: {exc.message}") from None
    mask = bits_of(idx)
    if G.closure(idx) != mask:
        raise NotASubgroup("element set is not closed in the group")
    return Subgroup(G, mask)


def subgroup_from_generators(G: PermGroup, gens: Sequence[Permutation | int]) -> Subgroup:
    idx = [g if isinstance(g, int) else G.index_of(g) for g in gens]
    return Subgroup(G, G.closure(idx), tuple(idx))


def point_stabilizer(G: PermGroup, point: int) -> Subgroup:
    """All g with g(point) = point."""
    return Subgroup(G, G.fixers_of(point))


def setwise_stabilizer(G: PermGroup, subset: Iterable[int]) -> Subgroup:
    """All g mapping ``subset`` onto itself."""
    pts = frozenset(subset)
    for p in pts:
        if not 0 <= p < G.degree:
            raise PointOutOfRange(f"point {p} outside 0..{G.degree - 1}")
    mask = bits_of(i for i, img in enumerate(G.images) if all(img[p] in pts for p in pts))
    return Subgroup(G, mask)


def conjugate_subgroup(U: Subgroup, g: Permutation | int) -> Subgroup:
    """U^g = g⁻¹ U g."""
    G = U.parent
    gi = g if isinstance(g, int) else G.index_of(g)
    mask = bits_of(G.conj(u, gi) for u in U.elements)
    gens = tuple(G.conj(u, gi) for u in U.generator_indices)
    return Subgroup(G, mask, gens)


def normal_closure(G: PermGroup, elements: Iterable[Permutation | int]) -> Subgroup:
    """Smallest normal subgroup containing the given elements."""
    gens = [e if isinstance(e, int) else G.index_of(e) for e in elements]
    gens = [g for g in dict.fromkeys(gens) if g != 0]
    mask = G.closure(gens)
    queue = deque(gens)
    while queue:
        h = queue.popleft()
        for g in G.generator_indices:
            c = G.conj(h, g)
            if not mask >> c & 1:
                gens.append(c)
                queue.append(c)
                mask = G.closure(gens)
    return Subgroup(G, mask, tuple(gens))


def is_normal(G: PermGroup, N: Subgroup) -> bool:
    """True if N^g = N for every generator g of G."""
    N = adopt(G, N)
    tables = G._conj_by_generators
    return all(N.mask >> table[n] & 1 for table in tables for n in N.generator_indices)


def conjugacy_classes(G: PermGroup) -> list[list[int]]:
    """Element conjugacy classes, each sorted, ordered by smallest member."""
    tables = G._conj_by_generators
    seen = [False] * G.order
    classes: list[list[int]] = []
    for start in range(G.order):
        if seen[start]:
            continue
        seen[start] = True
        members = [start]
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for table in tables:
                y = table[x]
                if not seen[y]:
                    seen[y] = True
                    members.append(y)
                    queue.append(y)
        classes.append(sorted(members))
    return classes


def _conjugate_mask(tables: list[list[int]], mask: int, k: int) -> int:
    return bits_of(tables[k][i] for i in iter_bits(mask))


def subgroup_conjugacy_classes(G: PermGroup, subgroups: Sequence[Subgroup]) -> list[int]:
    """Class label per subgroup: equal labels iff conjugate in G."""
    tables = G._conj_by_generators
    position = {U.mask: i for i, U in enumerate(subgroups)}
    labels = [-1] * len(subgroups)
    next_label = 0
    for i, U in enumerate(subgroups):
        if labels[i] != -1:
            continue
        orbit = {U.mask}
        queue = deque([U.mask])
        while queue:
            m = queue.popleft()
            for k in range(len(tables)):
                c = _conjugate_mask(tables, m, k)
                if c not in orbit:
                    orbit.add(c)
                    queue.append(c)
        for m in orbit:
            j = position.get(m)
            if j is not None:
                labels[j] = next_label
        next_label += 1
    return labels


def subgroup_sort_key(U: Subgroup) -> tuple[int, tuple[int, ...]]:
    return U.order, tuple(U.elements)


def all_subgroups(G: PermGroup, max_order_for_lattice: int = DEFAULT_MAX_LATTICE_ORDER) -> list[Subgroup]:
    """
    Every subgroup of G, sorted by (order, element indices).

    Every subgroup is a join of cyclic subgroups, so starting from the cyclic
    ones and joining each found subgroup with each cyclic subgroup until
    nothing new appears reaches all of them.
    """
    if G.order > max_order_for_lattice:
        raise OrderCapExceeded(
            f"subgroup lattice of a group of order {G.order} (cap {max_order_for_lattice})",
            hint="raise --max-lattice-order",
        )
    cyclic: dict[int, int] = {}
    for i in range(G.order):
        m = G.closure([i])
        cyclic.setdefault(m, i)
    pool = sorted(cyclic.items(), key=lambda kv: (kv[0].bit_count(), kv[1]))

    found: dict[int, Subgroup] = {m: Subgroup(G, m, (g,) if g else ()) for m, g in pool}
    queue = deque(found.values())
    while queue:
        H = queue.popleft()
        for m, g in pool:
            if m & ~H.mask == 0:
                continue
            gens = H.generator_indices + (g,)
            J = G.closure(gens)
            if J not in found:
                found[J] = Subgroup(G, J, gens)
                queue.append(found[J])
    logger.debug("%s: %d subgroups from %d cyclic", G.name or "group", len(found), len(pool))
    return sorted(found.values(), key=subgroup_sort_key)


# ============================================================================
# Coset actions
# ============================================================================

@dataclass(frozen=True)
class CosetAction:
    """
    G acting by right multiplication on the right cosets of U.

    ``images[i]`` is the permutation of coset labels induced by element ``i``
    of G; coset ``c`` is ``U · representatives[c]`` and its representative is
    the smallest element index in it. The kernel is not factored out of
    ``images`` (so sets of elements can be pulled back to G), only out of
    ``image_group``.
    """

    group: PermGroup
    subgroup: Subgroup
    representatives: tuple[int, ...]
    coset_of: tuple[int, ...]
    images: tuple[tuple[int, ...], ...]
    image_group: PermGroup

    @property
    def degree(self) -> int:
        return len(self.representatives)

    def fixer_mask(self) -> int:
        """Elements of G fixing at least one coset."""
        return bits_of(
            i for i, img in enumerate(self.images)
            if any(x == c for c, x in enumerate(img))
        )

    def derangement_mask(self) -> int:
        """Elements of G fixing no coset (pulled back to G)."""
        return self.group.all_mask & ~self.fixer_mask()


def coset_action(
    G: PermGroup,
    U: Subgroup,
    max_degree: int = DEFAULT_MAX_COSET_DEGREE,
) -> CosetAction:
    """Right multiplication action of G on the right cosets of U."""
    U = adopt(G, U)
    if U.index > max_degree:
        raise OrderCapExceeded(
            f"coset action of degree {U.index} exceeds cap {max_degree}",
            hint="raise --max-coset-degree",
        )
    coset_of = [-1] * G.order
    reps: list[int] = []
    members = U.elements
    for e in range(G.order):
        if coset_of[e] != -1:
            continue
        label = len(reps)
        reps.append(e)
        for u in members:
            coset_of[G.mul(u, e)] = label

    gen_images = [
        tuple(coset_of[G.mul(r, g)] for r in reps) for g in G.generator_indices
    ]
    images: list[tuple[int, ...] | None] = [None] * G.order
    images[0] = tuple(range(len(reps)))
    for i in G.bfs_order[1:]:
        par, k = G.word_parent(i)
        base = images[par]
        step = gen_images[k]
        images[i] = tuple(step[x] for x in base)  # type: ignore[union-attr]

    image_group = enumerate_group(
        [Permutation(img) for img in gen_images] or [identity(len(reps))],
        len(reps),
        max_order=G.order,
        name=f"{G.name or 'G'} on cosets",
    )
    return CosetAction(
        group=G,
        subgroup=U,
        representatives=tuple(reps),
        coset_of=tuple(coset_of),
        images=tuple(images),  # type: ignore[arg-type]
        image_group=image_group,
    )

"""
Derangement graphs and an exact clique solver.

Γ_G has the elements of G as vertices, with x ~ y iff x·y⁻¹ is a
derangement, i.e. iff the images of x and y differ at every point. That
second form is what we build from: for each point p and value v let B[p][v]
be the bitset of elements sending p to v; the non-neighbours of x are the
union of B[p][x(p)] over p. One pass per point, no multiplications, and it
works unchanged for coset actions (pass the action images).

Γ_G is a Cayley graph, so right translation is an automorphism and every
maximum clique or coclique can be moved to contain the identity (vertex 0).
The solver uses that reduction, Tomita-style greedy colouring bounds and
Python ints as candidate bitsets.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Sequence

from derangement_lab.core.group import CosetAction, PermGroup, bits_of, iter_bits
from derangement_lab.core.permutation import Permutation, format_cycles
from derangement_lab.errors import GraphTooLarge

if TYPE_CHECKING:
    import networkx as nx

logger = logging.getLogger(__name__)

DEFAULT_MAX_GRAPH_VERTICES = 10_080
DEFAULT_NODE_BUDGET = 10**8


def _action_images(G: PermGroup, action: CosetAction | None) -> Sequence[tuple[int, ...]]:
    if action is None:
        return G.images
    if action.group is not G:
        raise ValueError("coset action belongs to a different group")
    return action.images


def derangement_set(G: PermGroup, action: CosetAction | None = None) -> int:
    """Bitset of elements fixing no point (of Ω, or of the cosets in ``action``)."""
    images = _action_images(G, action)
    return bits_of(
        i for i, img in enumerate(images)
        if all(x != p for p, x in enumerate(img))
    )


@dataclass(frozen=True)
class DerangementGraph:
    """Γ_G on the canonical element order; ``adjacency[x]`` is a bitset."""

    group: PermGroup
    images: Sequence[tuple[int, ...]] = field(repr=False)
    connection_set: int
    adjacency: tuple[int, ...] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.adjacency)

    @property
    def action_degree(self) -> int:
        return len(self.images[0])

    @property
    def degree(self) -> int:
        """Common vertex degree, |D(G)|."""
        return self.connection_set.bit_count()

    @property
    def edge_count(self) -> int:
        return self.order * self.degree // 2

    def are_adjacent(self, x: int, y: int) -> bool:
        return bool(self.adjacency[x] >> y & 1)

    def neighbours(self, x: int) -> list[int]:
        return list(iter_bits(self.adjacency[x]))

    def is_clique(self, vertices: Sequence[int]) -> bool:
        vs = list(vertices)
        return all(self.adjacency[a] >> b & 1 for i, a in enumerate(vs) for b in vs[i + 1:])

    def is_intersecting(self, vertices: Sequence[int]) -> bool:
        """Every pair agrees on some point (checked on images, not adjacency)."""
        vs = [self.images[v] for v in vertices]
        return all(
            any(x == y for x, y in zip(a, b))
            for i, a in enumerate(vs) for b in vs[i + 1:]
        )

    def complement(self) -> tuple[int, ...]:
        full = (1 << self.order) - 1
        return tuple(full ^ adj ^ (1 << x) for x, adj in enumerate(self.adjacency))


def build_graph(
    G: PermGroup,
    action: CosetAction | None = None,
    max_vertices: int = DEFAULT_MAX_GRAPH_VERTICES,
) -> DerangementGraph:
    """
    Build Γ_G, optionally for the action of G on the cosets in ``action``.

    Raises:
        GraphTooLarge: |G| exceeds ``max_vertices``.
    """
    if G.order > max_vertices:
        raise GraphTooLarge(
            f"{G.name or 'group'} has {G.order} elements (graph cap {max_vertices})",
        )
    images = _action_images(G, action)
    m = len(images[0])
    by_value = [[0] * m for _ in range(m)]
    for i, img in enumerate(images):
        bit = 1 << i
        for p, x in enumerate(img):
            by_value[p][x] |= bit

    full = (1 << G.order) - 1
    adjacency = []
    for img in images:
        clash = 0
        for p, x in enumerate(img):
            clash |= by_value[p][x]
        adjacency.append(full ^ clash)
    graph = DerangementGraph(G, images, adjacency[0], tuple(adjacency))
    logger.debug(
        "built derangement graph of %s: %d vertices, degree %d",
        G.name or "group", graph.order, graph.degree,
    )
    return graph


# ----------------------------------------------------------------------------
# Exact clique search
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class CliqueResult:
    size: int
    witness: tuple[int, ...]
    exact: bool
    nodes: int = 0


def _colour_order(adjacency: Sequence[int], candidates: int) -> tuple[list[int], list[int]]:
    """
    Greedy sequential colouring of ``candidates``.

    Returns vertices in colour order with the running colour count, so
    ``bounds[k]`` bounds the clique size within ``order[:k + 1]``.
    """
    order: list[int] = []
    bounds: list[int] = []
    colour = 0
    uncoloured = candidates
    while uncoloured:
        colour += 1
        available = uncoloured
        while available:
            low = available & -available
            v = low.bit_length() - 1
            available &= ~adjacency[v] & ~low
            uncoloured ^= low
            order.append(v)
            bounds.append(colour)
    return order, bounds


def max_clique(
    adjacency: Sequence[int],
    *,
    root: int = 0,
    incumbent: Sequence[int] | None = None,
    ceiling: int | None = None,
    floor: int = 0,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> CliqueResult:
    """
    Largest clique containing ``root``, by branch and bound.

    ``incumbent`` seeds the best-known clique (it must contain ``root``).
    The search stops as soon as the incumbent reaches ``ceiling`` (a proven
    upper bound), so that case is still exact. With ``floor`` set, branches
    that cannot beat ``floor`` vertices are pruned too: an exact result then
    only proves that no clique larger than ``max(size, floor)`` exists. Each
    expanded node counts against ``node_budget``; when it runs out the best
    clique so far is returned with ``exact=False``.
    """
    best = list(incumbent) if incumbent else [root]
    if ceiling is not None and len(best) >= ceiling:
        return CliqueResult(len(best), tuple(sorted(best)), True, 0)

    candidates = adjacency[root]
    order, bounds = _colour_order(adjacency, candidates)
    # frame: clique so far, remaining candidates, colour order, bounds, cursor
    stack: list[list] = [[[root], candidates, order, bounds, len(order) - 1]]
    nodes = 1
    while stack:
        frame = stack[-1]
        clique, cand, order, bounds, k = frame
        if k < 0 or len(clique) + bounds[k] <= max(len(best), floor):
            stack.pop()
            continue
        v = order[k]
        frame[1] = cand & ~(1 << v)
        frame[4] = k - 1
        grown = clique + [v]
        sub = cand & adjacency[v]
        if not sub:
            if len(grown) > len(best):
                best = grown
                if ceiling is not None and len(best) >= ceiling:
                    break
            continue
        nodes += 1
        if nodes > node_budget:
            logger.info("clique search stopped after %d nodes (best %d)", nodes - 1, len(best))
            return CliqueResult(len(best), tuple(sorted(best)), False, nodes - 1)
        sub_order, sub_bounds = _colour_order(adjacency, sub)
        stack.append([grown, sub, sub_order, sub_bounds, len(sub_order) - 1])

    logger.debug("clique search finished: size %d after %d nodes", len(best), nodes)
    return CliqueResult(len(best), tuple(sorted(best)), True, nodes)


def clique_number(
    graph: DerangementGraph,
    node_budget: int = DEFAULT_NODE_BUDGET,
    ceiling: int | None = None,
) -> CliqueResult:
    """
    ω(Γ) with a witness clique.

    Clique members pairwise disagree on point 0, so ω never exceeds the
    action degree; that ceiling is always applied.
    """
    limit = graph.action_degree if ceiling is None else min(ceiling, graph.action_degree)
    return max_clique(graph.adjacency, ceiling=limit, node_budget=node_budget)


def _largest_stabilizer(graph: DerangementGraph) -> list[int]:
    """Elements fixing the point with the largest stabilizer: an intersecting set."""
    m = graph.action_degree
    counts = [0] * m
    for img in graph.images:
        for p in range(m):
            if img[p] == p:
                counts[p] += 1
    point = max(range(m), key=lambda p: (counts[p], -p))
    return [i for i, img in enumerate(graph.images) if img[point] == point]


def coclique_number(
    graph: DerangementGraph,
    node_budget: int = DEFAULT_NODE_BUDGET,
    ceiling: int | None = None,
) -> CliqueResult:
    """
    α(Γ): maximum clique of the complement graph.

    The search starts from the largest point stabilizer. ``ceiling`` may
    carry the clique–coclique bound |G| // ω.
    """
    seed = _largest_stabilizer(graph)
    return max_clique(
        graph.complement(),
        incumbent=seed,
        ceiling=ceiling,
        node_budget=node_budget,
    )


def has_clique_of_size(
    graph: DerangementGraph,
    c: int,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> tuple[bool, CliqueResult]:
    """
    Early-exit search for a clique of ``c`` vertices.

    A ``False`` verdict is only a proof when ``result.exact`` is set.
    """
    if c <= 1:
        witness = (0,) if c == 1 else ()
        return True, CliqueResult(len(witness), witness, True)
    if c > graph.action_degree:
        return False, CliqueResult(1, (0,), True)
    result = max_clique(graph.adjacency, ceiling=c, node_budget=node_budget)
    return result.size >= c, result


def triangle_exists(graph: DerangementGraph) -> bool:
    """Some pair of neighbours of the identity is adjacent (vertex-transitive)."""
    adj = graph.adjacency
    return any(adj[0] & adj[v] for v in iter_bits(adj[0]))


# ----------------------------------------------------------------------------
# Export
# ----------------------------------------------------------------------------

def write_dimacs(graph: DerangementGraph, path: Path) -> Path:
    """DIMACS edge format: ``p edge n m`` then 1-based ``e u v`` with u < v."""
    lines = [
        f"c derangement graph of {graph.group.name or 'group'}",
        f"p edge {graph.order} {graph.edge_count}",
    ]
    for x, adj in enumerate(graph.adjacency):
        for y in iter_bits(adj >> (x + 1)):
            lines.append(f"e {x + 1} {x + y + 2}")
    path = Path(path)
    path.write_text("\n".join(lines) + "\n")
    return path


def to_networkx(graph: DerangementGraph) -> "nx.Graph":
    """Γ as a networkx graph; nodes carry the element in cycle notation."""
    import networkx as nx

    g = nx.Graph(name=graph.group.name)
    for i, img in enumerate(graph.group.images):
        g.add_node(i, element=format_cycles(Permutation(img)))
    for x, adj in enumerate(graph.adjacency):
        g.add_edges_from((x, x + y + 1) for y in iter_bits(adj >> (x + 1)))
    return g

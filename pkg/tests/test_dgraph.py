"""Tests for derangement graphs and the clique solver."""
from __future__ import annotations

from pathlib import Path

import networkx as nx
import pytest

from derangement_lab.analysis.dgraph import (
    build_graph,
    clique_number,
    coclique_number,
    derangement_set,
    has_clique_of_size,
    max_clique,
    to_networkx,
    triangle_exists,
    write_dimacs,
)
from derangement_lab.catalog.builtin import builtin_catalog
from derangement_lab.core.group import coset_action, point_stabilizer
from derangement_lab.core.permutation import parse_cycles
from derangement_lab.errors import GraphTooLarge
from tests.conftest import make_group

SMALL = [e for e in builtin_catalog() if e.name not in {"S5-natural", "S6-natural", "S7-natural", "A6-natural", "A7-natural", "PSL(3,2)-deg7"}]


# ============================================================================
# Derangements and graph structure
# ============================================================================

def test_derangement_counts(c4, s4):
    assert derangement_set(c4).bit_count() == 3
    assert derangement_set(s4).bit_count() == 9
    assert derangement_set(make_group(["()"], 1)) == 0


def test_cyclic_graph_is_complete(catalog_group):
    G = catalog_group("C7-regular")
    graph = build_graph(G)
    assert graph.degree == 6
    assert graph.is_clique(range(7))


def test_graph_with_global_fixed_point_is_empty():
    G = make_group(["(1 2)"], 3)
    graph = build_graph(G)
    assert graph.degree == 0
    assert all(adj == 0 for adj in graph.adjacency)
    assert coclique_number(graph).size == 2


def test_s4_graph_shape(s4):
    graph = build_graph(s4)
    assert graph.order == 24
    assert graph.degree == 9
    assert graph.edge_count == 108
    assert all(adj.bit_count() == 9 for adj in graph.adjacency)


def test_adjacency_is_symmetric_and_matches_quotients(s4):
    graph = build_graph(s4)
    for x in range(24):
        for y in range(24):
            assert graph.are_adjacent(x, y) == graph.are_adjacent(y, x)
            quotient = s4.mul(x, s4.inv(y))
            assert graph.are_adjacent(x, y) == bool(graph.connection_set >> quotient & 1)


def test_graph_cap(s4):
    with pytest.raises(GraphTooLarge):
        build_graph(s4, max_vertices=10)


def test_coset_action_graph_matches_natural_graph(s4):
    natural = build_graph(s4)
    on_cosets = build_graph(s4, coset_action(s4, point_stabilizer(s4, 2)))
    assert on_cosets.adjacency == natural.adjacency


# ============================================================================
# Cliques and cocliques
# ============================================================================

def test_complete_graph_numbers(catalog_group):
    graph = build_graph(catalog_group("C9-regular"))
    assert clique_number(graph).size == 9
    assert coclique_number(graph).size == 1


def test_s4_clique_and_coclique(s4):
    graph = build_graph(s4)
    omega = clique_number(graph)
    assert omega.size == 4 and omega.exact
    assert graph.is_clique(omega.witness)
    klein = [s4.index_of(parse_cycles(c, 4)) for c in ["()", "(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)"]]
    assert graph.is_clique(klein)

    alpha = coclique_number(graph)
    assert alpha.size == 6 and alpha.exact
    assert graph.is_intersecting(alpha.witness)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_symmetric_groups_have_omega_n(n, catalog_group):
    graph = build_graph(catalog_group(f"S{n}-natural"))
    omega = clique_number(graph)
    assert omega.size == n
    assert omega.exact


def test_solver_without_ceiling_agrees(s4):
    graph = build_graph(s4)
    result = max_clique(graph.adjacency)
    assert result.size == 4
    assert result.exact
    assert 0 in result.witness


@pytest.mark.parametrize("entry", SMALL, ids=lambda e: e.name)
def test_solver_matches_networkx(entry, catalog_group):
    graph = build_graph(catalog_group(entry.name))
    assert graph.order <= 60
    g = to_networkx(graph)
    assert g.number_of_edges() == graph.edge_count
    assert clique_number(graph).size == max(len(c) for c in nx.find_cliques(g))
    assert coclique_number(graph).size == max(len(c) for c in nx.find_cliques(nx.complement(g)))


def test_node_budget_makes_result_inexact(catalog_group):
    graph = build_graph(catalog_group("S5-natural"))
    result = clique_number(graph, node_budget=1)
    assert not result.exact
    assert result.size >= 1
    assert graph.is_clique(result.witness)


def test_ceiling_stops_search(s4):
    graph = build_graph(s4)
    seed = [s4.index_of(parse_cycles(c, 4)) for c in ["()", "(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)"]]
    result = max_clique(graph.adjacency, incumbent=seed, ceiling=4)
    assert result.size == 4 and result.exact and result.nodes == 0


# ============================================================================
# Jordan and triangles
# ============================================================================

@pytest.mark.parametrize("entry", [e for e in SMALL if e.degree >= 2], ids=lambda e: e.name)
def test_transitive_groups_have_edges_and_triangles(entry, catalog_group):
    graph = build_graph(catalog_group(entry.name))
    found, result = has_clique_of_size(graph, 2)
    assert found and result.exact
    if entry.degree >= 3:
        assert triangle_exists(graph)
        assert has_clique_of_size(graph, 3)[0]


def test_c2_has_no_triangle(catalog_group):
    graph = build_graph(catalog_group("C2-regular"))
    assert not triangle_exists(graph)
    found, result = has_clique_of_size(graph, 3)
    assert not found and result.exact


# ============================================================================
# Export
# ============================================================================

def test_write_dimacs(s4, tmp_path: Path):
    path = write_dimacs(build_graph(s4), tmp_path / "s4.dimacs")
    lines = path.read_text().splitlines()
    assert "p edge 24 108" in lines
    edges = [line.split() for line in lines if line.startswith("e ")]
    assert len(edges) == 108
    assert all(1 <= int(u) < int(v) <= 24 for _, u, v in edges)


def test_to_networkx_labels_elements(c4):
    g = to_networkx(build_graph(c4))
    assert g.nodes[0]["element"] == "()"
    assert g.number_of_edges() == 6

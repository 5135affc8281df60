"""Tests for group enumeration, subgroups and coset actions."""
from __future__ import annotations

import random
from collections import Counter
from itertools import combinations

import pytest
from sympy.combinatorics import Permutation as SymPerm
from sympy.combinatorics import PermutationGroup

from derangement_lab.analysis.dgraph import derangement_set
from derangement_lab.catalog.builtin import FANO_LINE, builtin_catalog, psl32_stabilizer_pair
from derangement_lab.core.group import (
    PermGroup,
    adopt,
    all_subgroups,
    conjugacy_classes,
    conjugate_subgroup,
    coset_action,
    is_normal,
    normal_closure,
    point_stabilizer,
    setwise_stabilizer,
    subgroup_conjugacy_classes,
    subgroup_from_generators,
)
from derangement_lab.core.permutation import compose, parse_cycles
from derangement_lab.errors import NotAnElement, NotASubgroup, OrderCapExceeded, PointOutOfRange
from tests.conftest import make_group


def _sympy(G: PermGroup) -> PermutationGroup:
    return PermutationGroup([SymPerm(list(g.images)) for g in G.generators])


def _brute_force_subgroups(G: PermGroup) -> set[int]:
    """Every closed subset containing the identity."""
    found = set()
    rest = list(range(1, G.order))
    for k in range(len(rest) + 1):
        for combo in combinations(rest, k):
            members = (0,) + combo
            mask = sum(1 << i for i in members)
            if all(mask >> G.mul(a, b) & 1 for a in members for b in members):
                found.add(mask)
    return found


# ============================================================================
# Enumeration
# ============================================================================

def test_cyclic_and_symmetric_orders():
    assert make_group(["(1 2 3 4)"], 4).order == 4
    assert make_group(["(1 2)", "(1 2 3 4)"], 4).order == 24


def test_order_cap():
    G = PermGroup(2, [parse_cycles("(1 2)", 2)], max_order=1)
    with pytest.raises(OrderCapExceeded) as exc:
        G.order
    assert exc.value.hint


def test_elements_are_sorted_with_identity_first(s4):
    assert s4.images == sorted(s4.images)
    assert s4.images[0] == (0, 1, 2, 3)


def test_mul_matches_compose(s4):
    for i in range(0, 24, 5):
        for j in range(0, 24, 7):
            assert s4.element(s4.mul(i, j)) == compose(s4.element(i), s4.element(j))
            assert s4.mul(i, s4.inv(i)) == 0


def test_index_of_rejects_outsiders(catalog_group):
    A4 = catalog_group("A4-natural")
    with pytest.raises(NotAnElement):
        A4.index_of(parse_cycles("(1 2)", 4))


@pytest.mark.parametrize("entry", [e for e in builtin_catalog() if e.degree <= 7], ids=lambda e: e.name)
def test_orders_and_transitivity_match_sympy(entry, catalog_group):
    G = catalog_group(entry.name)
    oracle = _sympy(G)
    assert G.order == oracle.order()
    assert G.is_transitive() == oracle.is_transitive()


def test_named_orders(catalog_group):
    assert catalog_group("S5-natural").order == 120
    assert catalog_group("PSL(3,2)-deg7").order == 168
    assert catalog_group("AGL(1,5)-deg5").order == 20
    assert catalog_group("C2wrC3-deg6").order == 24


# ============================================================================
# Orbits and stabilizers
# ============================================================================

def test_orbits():
    assert make_group(["(1 2 3 4)"], 4).orbits() == ((0, 1, 2, 3),)
    assert make_group(["(1 2)"], 4).orbits() == ((0, 1), (2,), (3,))


def test_point_stabilizers(s4, c4):
    assert point_stabilizer(c4, 0).order == 1
    assert point_stabilizer(s4, 0).order == 6
    with pytest.raises(PointOutOfRange):
        point_stabilizer(s4, 4)


def test_fano_line_stabilizer(psl32):
    point, line = psl32_stabilizer_pair(psl32)
    assert point.order == line.order == 24
    assert setwise_stabilizer(psl32, FANO_LINE).mask == line.mask
    labels = subgroup_conjugacy_classes(psl32, [point, line])
    assert labels[0] != labels[1]


# ============================================================================
# Normality and conjugacy
# ============================================================================

def test_normal_closure_of_double_transposition(s4):
    V = normal_closure(s4, [parse_cycles("(1 2)(3 4)", 4)])
    assert V.order == 4
    assert is_normal(s4, V)
    assert conjugate_subgroup(V, parse_cycles("(1 2 3 4)", 4)).mask == V.mask


def test_point_stabilizer_is_not_normal(s4):
    assert not is_normal(s4, point_stabilizer(s4, 0))


@pytest.mark.parametrize("name, count", [("S4-natural", 5), ("A5-natural", 5), ("PSL(3,2)-deg7", 6), ("C6-regular", 6)])
def test_conjugacy_class_counts(name, count, catalog_group):
    classes = conjugacy_classes(catalog_group(name))
    assert len(classes) == count
    assert classes[0] == [0]


def test_adopt_rejects_foreign_subgroup(s4, catalog_group):
    A4 = catalog_group("A4-natural")
    with pytest.raises(NotASubgroup):
        adopt(A4, point_stabilizer(s4, 0))
    assert adopt(s4, point_stabilizer(A4, 0)).order == 3


# ============================================================================
# Subgroup lattice
# ============================================================================

def test_subgroup_counts(catalog_group):
    assert len(all_subgroups(catalog_group("C6-regular"))) == 4
    assert len(all_subgroups(catalog_group("S3-natural"))) == 6
    assert len(all_subgroups(make_group(["(1 2)(3 4)", "(1 3)(2 4)"], 4))) == 5
    assert len(all_subgroups(catalog_group("S4-natural"))) == 30
    assert len(all_subgroups(catalog_group("A5-natural"))) == 59


def test_subgroup_classes_of_s4(s4):
    subgroups = all_subgroups(s4)
    assert len(set(subgroup_conjugacy_classes(s4, subgroups))) == 11


@pytest.mark.parametrize(
    "name",
    ["C6-regular", "C8-regular", "C12-regular", "D4-natural", "D6-natural", "S3-natural", "A4-natural", "C2wrC2-deg4"],
)
def test_subgroups_match_brute_force(name, catalog_group):
    G = catalog_group(name)
    assert {U.mask for U in all_subgroups(G)} == _brute_force_subgroups(G)


def test_lattice_cap(catalog_group):
    with pytest.raises(OrderCapExceeded):
        all_subgroups(catalog_group("S5-natural"), max_order_for_lattice=100)


def test_join(s4):
    a = subgroup_from_generators(s4, [parse_cycles("(1 2)", 4)])
    b = subgroup_from_generators(s4, [parse_cycles("(3 4)", 4)])
    assert a.join(b).order == 4
    assert a.join(a) is a


# ============================================================================
# Coset actions
# ============================================================================

def test_coset_action_on_whole_group_is_trivial(s4):
    action = coset_action(s4, s4.whole())
    assert action.degree == 1
    assert action.image_group.order == 1


def test_coset_action_on_point_stabilizer_is_natural(s4):
    action = coset_action(s4, point_stabilizer(s4, 0))
    assert action.degree == 4
    assert action.image_group.order == 24
    assert derangement_set(s4, action) == derangement_set(s4)


def test_coset_action_on_trivial_subgroup_is_regular(c4):
    action = coset_action(c4, c4.trivial())
    assert action.degree == 4
    assert action.image_group.order == 4
    assert action.derangement_mask() == c4.all_mask & ~1


def test_coset_action_images_are_homomorphic(s4):
    action = coset_action(s4, subgroup_from_generators(s4, [parse_cycles("(1 2)", 4)]))
    for i in range(0, 24, 3):
        for j in range(0, 24, 5):
            expected = tuple(action.images[j][x] for x in action.images[i])
            assert action.images[s4.mul(i, j)] == expected


def test_coset_degree_cap(s4):
    with pytest.raises(OrderCapExceeded):
        coset_action(s4, s4.trivial(), max_degree=10)


# ============================================================================
# Orbit-stabilizer, Lagrange and transitivity of coset actions
# ============================================================================

@pytest.mark.parametrize("entry", builtin_catalog(), ids=lambda e: e.name)
def test_orbit_stabilizer(entry, catalog_group):
    G = catalog_group(entry.name)
    for orbit in G.orbits():
        for p in orbit:
            assert len(orbit) * point_stabilizer(G, p).order == G.order


@pytest.mark.parametrize("name", ["S4-natural", "A5-natural", "PSL(3,2)-deg7", "C2wrC3-deg6", "D6-natural"])
def test_coset_actions_of_every_subgroup(name, catalog_group):
    G = catalog_group(name)
    for U in all_subgroups(G):
        assert U.order * U.index == G.order
        action = coset_action(G, U)
        assert action.degree == U.index
        assert action.image_group.is_transitive()
        assert set(Counter(action.coset_of).values()) == {U.order}


def test_random_subgroups_obey_lagrange(catalog_group):
    rng = random.Random(2026)
    for name in ["S5-natural", "S6-natural", "PSL(3,2)-deg7", "AGL(1,5)-deg5", "C2wrC3-deg6"]:
        G = catalog_group(name)
        for _ in range(25):
            gens = rng.sample(range(G.order), rng.randint(1, 2))
            U = subgroup_from_generators(G, gens)
            assert G.order % U.order == 0
            assert U.elements[0] == 0
            assert all(G.mul(a, b) in U for a in U.elements[:8] for b in gens)

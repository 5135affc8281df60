"""Tests for block systems, normal partitions and normal series."""
from __future__ import annotations

import pytest

from derangement_lab.analysis.blocks import (
    NormalSeries,
    block_kernel,
    block_system,
    certify,
    is_innately_transitive,
    is_normal_system,
    is_primitive,
    is_quasiprimitive,
    max_normal_series,
    minimal_block_system,
    minimal_normal_subgroups,
    normal_partitions,
    normal_subgroups,
    validate_series,
)
from derangement_lab.catalog.builtin import builtin_catalog
from derangement_lab.core.group import all_subgroups, is_normal
from derangement_lab.core.partition import discrete, refines, trivial
from derangement_lab.errors import InvalidSeries, NotABlockSystem, NotTransitive
from tests.conftest import make_group


# ============================================================================
# Minimal block systems
# ============================================================================

def test_symmetric_group_is_primitive(s4):
    for beta in range(1, 4):
        assert minimal_block_system(s4, 0, beta).is_trivial
    assert is_primitive(s4)


def test_dihedral_pair_blocks(d4):
    system = minimal_block_system(d4, 0, 2)
    assert system.blocks == ((0, 2), (1, 3))
    assert system.block_size == 2
    assert system.block_of == [0, 1, 0, 1]
    assert not is_primitive(d4)


def test_cyclic_pair_blocks(c4):
    assert minimal_block_system(c4, 0, 2).blocks == ((0, 2), (1, 3))
    assert minimal_block_system(c4, 0, 1).is_trivial


def test_same_point_gives_discrete(c4):
    assert minimal_block_system(c4, 1, 1).is_discrete


def test_minimal_block_system_requires_transitivity():
    with pytest.raises(NotTransitive):
        minimal_block_system(make_group(["(1 2)"], 3), 0, 1)


def test_block_system_validation(d4):
    assert block_system(d4, [[1, 3], [0, 2]]).blocks == ((0, 2), (1, 3))
    with pytest.raises(NotABlockSystem):
        block_system(d4, [[0, 1], [2, 3]])
    with pytest.raises(NotABlockSystem):
        block_system(d4, [[0], [1, 2, 3]])
    with pytest.raises(NotABlockSystem):
        block_system(d4, [[0, 2], [1]])


# ============================================================================
# Normality
# ============================================================================

def test_trivial_systems_are_normal(s4):
    normal, witness = is_normal_system(s4, discrete(4))
    assert normal and witness.order == 1
    normal, witness = is_normal_system(s4, trivial(4))
    assert normal and witness.order == 24


def test_dihedral_pairs_are_normal(d4):
    normal, witness = is_normal_system(d4, ((0, 2), (1, 3)))
    assert normal
    assert witness.order == 4
    assert witness.orbits() == ((0, 2), (1, 3))
    assert is_normal(d4, witness)


def test_certify_fills_witness(d4):
    system = certify(d4, minimal_block_system(d4, 0, 2))
    assert system.is_normal
    assert system.witness_kernel.mask == block_kernel(d4, system).mask


def test_block_kernel_rejects_non_invariant(d4):
    with pytest.raises(NotABlockSystem):
        block_kernel(d4, ((0, 1), (2, 3)))


@pytest.mark.parametrize("blocks", [((0, 2),), ((0, 2), (1, 3), (4,))], ids=["uncovered", "out-of-range"])
def test_normality_needs_a_partition(c4, blocks):
    with pytest.raises(NotABlockSystem):
        is_normal_system(c4, blocks)
    with pytest.raises(NotABlockSystem):
        block_kernel(c4, blocks)


def test_non_normal_block_system():
    # S3 on the 6 cosets of 1, with blocks from the cosets of a non-normal C2
    G = make_group(["(1 2)(3 6)(4 5)", "(1 3 5)(2 4 6)"], 6)
    assert G.order == 6 and G.is_transitive()
    system = minimal_block_system(G, 0, 1)
    assert system.block_count == 3
    normal, witness = is_normal_system(G, system)
    assert not normal and witness is None


# ============================================================================
# Normal subgroups and partitions
# ============================================================================

def test_normal_subgroups_of_s4(s4):
    assert [N.order for N in normal_subgroups(s4)] == [1, 4, 12, 24]
    assert [N.order for N in minimal_normal_subgroups(s4)] == [4]


def test_simple_group_has_only_trivial_partitions(catalog_group):
    systems = normal_partitions(catalog_group("A5-natural"))
    assert [s.blocks for s in systems] == [discrete(5), trivial(5)]


def test_cyclic_four_has_three_partitions(c4):
    systems = normal_partitions(c4)
    assert [s.blocks for s in systems] == [discrete(4), ((0, 2), (1, 3)), trivial(4)]
    assert all(s.is_normal and s.witness_kernel is not None for s in systems)


def test_s4_partitions_are_trivial(s4):
    assert [s.blocks for s in normal_partitions(s4)] == [discrete(4), trivial(4)]


def test_normal_partitions_require_transitivity():
    with pytest.raises(NotTransitive):
        normal_partitions(make_group(["(1 2)"], 3))


@pytest.mark.parametrize(
    "entry",
    [e for e in builtin_catalog() if e.name not in {"S6-natural", "S7-natural", "A6-natural", "A7-natural"}],
    ids=lambda e: e.name,
)
def test_normal_partitions_match_lattice_oracle(entry, catalog_group):
    G = catalog_group(entry.name)
    oracle = {N.orbits() for N in all_subgroups(G) if is_normal(G, N)}
    assert {s.blocks for s in normal_partitions(G)} == oracle
    assert {N.mask for N in normal_subgroups(G)} == {N.mask for N in all_subgroups(G) if is_normal(G, N)}


@pytest.mark.parametrize(
    "name, quasi, innate",
    [
        ("S4-natural", True, True),
        ("A5-natural", True, True),
        ("C4-regular", False, False),
        ("C5-regular", True, True),
        ("D4-natural", False, False),
        ("D5-natural", True, True),
        ("AGL(1,5)-deg5", True, True),
    ],
)
def test_quasiprimitivity(name, quasi, innate, catalog_group):
    G = catalog_group(name)
    assert is_quasiprimitive(G) == quasi
    assert is_innately_transitive(G) == innate


# ============================================================================
# Series
# ============================================================================

@pytest.mark.parametrize(
    "name, length",
    [
        ("A5-natural", 1),
        ("S4-natural", 1),
        ("PSL(3,2)-deg7", 1),
        ("C4-regular", 2),
        ("C6-regular", 2),
        ("D4-natural", 2),
        ("C2wrC3-deg6", 2),
        ("C8-regular", 3),
        ("C16-regular", 4),
        ("C1-regular", 0),
    ],
)
def test_series_lengths(name, length, catalog_group):
    G = catalog_group(name)
    series = max_normal_series(G)
    assert series.length == length
    validate_series(G, series)
    assert series.sigma(0).is_trivial
    assert series.sigma(series.length).is_discrete


def test_series_is_a_refinement_chain(catalog_group):
    series = max_normal_series(catalog_group("C12-regular"))
    assert series.length == 3
    for fine, coarse in zip(series.chain, series.chain[1:]):
        assert refines(fine.blocks, coarse.blocks, 12)
    assert series.interior_length == 2


def test_quasiprimitive_iff_length_one(catalog_group):
    for entry in builtin_catalog():
        if entry.degree < 2 or entry.degree > 6:
            continue
        G = catalog_group(entry.name)
        assert (max_normal_series(G).length == 1) == is_quasiprimitive(G), entry.name


def test_validate_series_rejects_tampering(c4, s4):
    series = max_normal_series(c4)
    reversed_chain = NormalSeries(c4, series.chain[::-1], series.kernels[::-1])
    with pytest.raises(InvalidSeries):
        validate_series(c4, reversed_chain)
    skipped = NormalSeries(c4, series.chain[1:], series.kernels[1:])
    with pytest.raises(InvalidSeries):
        validate_series(c4, skipped)
    with pytest.raises(InvalidSeries):
        validate_series(s4, series)

"""Tests for permutations and cycle notation."""
from __future__ import annotations

import random

import pytest

from derangement_lab.core.permutation import (
    Permutation,
    compose,
    cycle_type,
    fixed_points,
    format_cycles,
    identity,
    inverse,
    is_derangement,
    order,
    parse_cycles,
    power,
)
from derangement_lab.errors import DegreeMismatch, MalformedCycles, PointOutOfRange


def test_compose_with_identity_is_noop():
    p = parse_cycles("(1 3 2)(4)", 4)
    assert compose(identity(4), p) == p
    assert compose(p, identity(4)) == p


def test_compose_four_cycle_with_itself():
    p = parse_cycles("(1 2 3 4)", 4)
    assert format_cycles(compose(p, p)) == "(1 3)(2 4)"


def test_compose_applies_left_factor_first():
    p = parse_cycles("(1 2)", 3)
    q = parse_cycles("(2 3)", 3)
    # 1 -> 2 under p, then 2 -> 3 under q
    assert compose(p, q).apply(0) == 2
    assert format_cycles(compose(p, q)) == "(1 3 2)"


def test_compose_with_inverse_is_identity():
    p = parse_cycles("(1 4 2)(3 5)", 5)
    assert compose(p, inverse(p)) == identity(5)
    assert compose(inverse(p), p) == identity(5)


def test_compose_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        compose(identity(3), identity(4))


def test_fixed_points():
    assert fixed_points(identity(5)) == {0, 1, 2, 3, 4}
    assert fixed_points(parse_cycles("(1 2)(3 4)", 4)) == frozenset()
    assert fixed_points(parse_cycles("(1 2 3)", 5)) == {3, 4}


def test_is_derangement():
    assert is_derangement(parse_cycles("(1 2)(3 4)", 4))
    assert not is_derangement(parse_cycles("(1 2 3)", 4))


def test_parse_identity_and_four_cycle():
    assert parse_cycles("()", 3) == identity(3)
    assert parse_cycles("(1 2 3 4)", 4).images == (1, 2, 3, 0)


def test_parse_tolerates_commas_and_spaces():
    assert parse_cycles(" (1, 2, 3) ", 3) == parse_cycles("(1 2 3)", 3)


@pytest.mark.parametrize("text", ["(1 2)(2 3)", "(1 1)", "(1 2", "1 2", "(a b)", ""])
def test_parse_rejects_malformed(text):
    with pytest.raises(MalformedCycles):
        parse_cycles(text, 3)


@pytest.mark.parametrize("text", ["(1 4)", "(0 1)"])
def test_parse_rejects_points_out_of_range(text):
    with pytest.raises(PointOutOfRange):
        parse_cycles(text, 3)


def test_format_is_canonical():
    p = parse_cycles("(5 4)(3 1 2)", 5)
    assert format_cycles(p) == "(1 2 3)(4 5)"
    assert format_cycles(identity(4)) == "()"
    assert str(p) == "(1 2 3)(4 5)"


def test_from_images_validates():
    assert Permutation.from_images([2, 0, 1]).images == (2, 0, 1)
    with pytest.raises(MalformedCycles):
        Permutation.from_images([0, 0, 1])
    with pytest.raises(PointOutOfRange):
        Permutation.from_images([0, 3, 1])


def test_order_power_and_cycle_type():
    p = parse_cycles("(1 2 3)(4 5)", 6)
    assert order(p) == 6
    assert cycle_type(p) == (3, 2, 1)
    assert power(p, 6) == identity(6)
    assert power(p, -1) == inverse(p)
    assert power(p, 2) == compose(p, p)


# ============================================================================
# Seeded random permutations
# ============================================================================

def _random_permutation(rng: random.Random, degree: int) -> Permutation:
    images = list(range(degree))
    rng.shuffle(images)
    return Permutation.from_images(images)


def test_compose_is_associative():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(1, 9)
        p, q, r = (_random_permutation(rng, n) for _ in range(3))
        assert compose(compose(p, q), r) == compose(p, compose(q, r))


def test_inverse_has_the_same_fixed_points():
    rng = random.Random(12)
    for _ in range(200):
        p = _random_permutation(rng, rng.randint(1, 9))
        assert fixed_points(inverse(p)) == fixed_points(p)
        assert is_derangement(inverse(p)) == is_derangement(p)


def test_cycle_notation_reparses():
    rng = random.Random(13)
    for _ in range(200):
        p = _random_permutation(rng, rng.randint(1, 12))
        assert parse_cycles(format_cycles(p), p.degree) == p

"""Shared fixtures: catalog groups are enumerated once per session."""
from __future__ import annotations

from typing import Callable, Sequence

import pytest

from derangement_lab.catalog.builtin import get_entry
from derangement_lab.core.group import PermGroup, enumerate_group
from derangement_lab.core.permutation import parse_cycles


def make_group(gens: Sequence[str], degree: int, name: str = "") -> PermGroup:
    return enumerate_group([parse_cycles(g, degree) for g in gens], degree, name=name)


@pytest.fixture(scope="session")
def catalog_group() -> Callable[[str], PermGroup]:
    """``catalog_group("S4-natural")`` -> the enumerated group, cached."""
    cache: dict[str, PermGroup] = {}

    def load(name: str) -> PermGroup:
        if name not in cache:
            cache[name] = get_entry(name).to_group()
        return cache[name]

    return load


@pytest.fixture(scope="session")
def s4(catalog_group) -> PermGroup:
    return catalog_group("S4-natural")


@pytest.fixture(scope="session")
def c4(catalog_group) -> PermGroup:
    return catalog_group("C4-regular")


@pytest.fixture(scope="session")
def psl32(catalog_group) -> PermGroup:
    return catalog_group("PSL(3,2)-deg7")


@pytest.fixture(scope="session")
def d4() -> PermGroup:
    return make_group(["(1 2 3 4)", "(1 3)"], 4, name="D4")

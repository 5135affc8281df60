"""
Built-in catalog of small transitive groups.

Families, 1-based generators:

- ``C{n}-regular``   n = 1..16, the n-cycle
- ``D{n}-natural``   n = 3..12, dihedral of order 2n on the n-gon
- ``S{n}-natural``   n = 2..7
- ``A{n}-natural``   n = 3..7, generated by the 3-cycles (1 2 i)
- ``C2wrC2-deg4``, ``C2wrC3-deg6``   imprimitive wreath products
- ``AGL(1,5)-deg5``  the Frobenius group x ↦ ax + b over GF(5)
- ``PSL(3,2)-deg7``  acting on the points of the Fano plane

Tags are stated per family and checked against the computed ones by the
test suite.
"""
from __future__ import annotations

from functools import lru_cache
from pathlib import Path

from derangement_lab.catalog.files import CatalogEntry, load_group_file
from derangement_lab.core.group import (
    DEFAULT_MAX_ORDER,
    PermGroup,
    Subgroup,
    point_stabilizer,
    setwise_stabilizer,
)
from derangement_lab.errors import UnknownGroup

# Fano lines are {0, 1, 3} + i mod 7 (0-based); the generators below preserve them.
FANO_LINE = (0, 1, 3)


def _cycle(points: range | list[int]) -> str:
    return "(" + " ".join(str(p) for p in points) + ")"


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def _entry(name: str, degree: int, gens: list[str], tags: set[str]) -> CatalogEntry:
    return CatalogEntry(name=name, degree=degree, generators=tuple(gens), tags=frozenset(tags))


def _cyclic(n: int) -> CatalogEntry:
    gens = [_cycle(range(1, n + 1))] if n > 1 else ["()"]
    simple = n == 1 or _is_prime(n)
    tags = {"transitive", "regular", "primitive" if simple else "imprimitive"}
    if simple:
        tags.add("quasiprimitive")
    return _entry(f"C{n}-regular", n, gens, tags)


def _dihedral(n: int) -> CatalogEntry:
    reflection = "".join(_cycle([i, n + 2 - i]) for i in range(2, n // 2 + 2) if i < n + 2 - i)
    prime = _is_prime(n)
    tags = {"transitive", "primitive" if prime else "imprimitive"}
    if prime:
        tags.add("quasiprimitive")
    return _entry(f"D{n}-natural", n, [_cycle(range(1, n + 1)), reflection], tags)


def _symmetric(n: int) -> CatalogEntry:
    gens = ["(1 2)"] if n == 2 else [_cycle(range(1, n + 1)), "(1 2)"]
    tags = {"transitive", "primitive", "quasiprimitive"}
    if n == 2:
        tags.add("regular")
    return _entry(f"S{n}-natural", n, gens, tags)


def _alternating(n: int) -> CatalogEntry:
    gens = [_cycle([1, 2, i]) for i in range(3, n + 1)]
    tags = {"transitive", "primitive", "quasiprimitive"}
    if n == 3:
        tags.add("regular")
    return _entry(f"A{n}-natural", n, gens, tags)


@lru_cache(maxsize=1)
def builtin_catalog() -> tuple[CatalogEntry, ...]:
    entries: list[CatalogEntry] = []
    entries += [_cyclic(n) for n in range(1, 17)]
    entries += [_dihedral(n) for n in range(3, 13)]
    entries += [_symmetric(n) for n in range(2, 8)]
    entries += [_alternating(n) for n in range(3, 8)]
    entries += [
        _entry("C2wrC2-deg4", 4, ["(1 2)", "(1 3)(2 4)"], {"transitive", "imprimitive"}),
        _entry("C2wrC3-deg6", 6, ["(1 2)", "(1 3 5)(2 4 6)"], {"transitive", "imprimitive"}),
        _entry(
            "AGL(1,5)-deg5", 5, ["(1 2 3 4 5)", "(2 3 5 4)"],
            {"transitive", "primitive", "quasiprimitive"},
        ),
        _entry(
            "PSL(3,2)-deg7", 7, ["(1 2 3 4 5 6 7)", "(2 3)(4 7)"],
            {"transitive", "primitive", "quasiprimitive"},
        ),
    ]
    return tuple(entries)


def catalog_names() -> list[str]:
    return [e.name for e in builtin_catalog()]


def get_entry(name: str) -> CatalogEntry:
    for entry in builtin_catalog():
        if entry.name == name:
            return entry
    raise UnknownGroup(f"no built-in group named {name!r}")


def load_source(source: str, max_order: int = DEFAULT_MAX_ORDER) -> CatalogEntry:
    """A built-in name, or else a path to a group file."""
    for entry in builtin_catalog():
        if entry.name == source:
            return entry
    path = Path(source)
    if path.is_file():
        return load_group_file(path, max_order)
    raise UnknownGroup(f"{source!r} is neither a built-in group nor a group file")


def psl32_stabilizer_pair(G: PermGroup) -> tuple[Subgroup, Subgroup]:
    """
    Stabilizers of a point and of a line of the Fano plane.

    Both have index 7 and are not conjugate in PSL(3,2), yet their coset
    actions have the same derangements.
    """
    return point_stabilizer(G, 0), setwise_stabilizer(G, FANO_LINE)

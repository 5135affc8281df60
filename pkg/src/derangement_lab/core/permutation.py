"""
Permutations on {0, …, n−1}.

Internally points are 0-based and a permutation is its image tuple. All
text I/O uses 1-based disjoint-cycle notation, e.g. ``"(1 2 3)(4 5)"``.

Products act on the right: ``compose(p, q)`` applies ``p`` first, then
``q``, so ``compose(p, q).images[i] == q.images[p.images[i]]``. This is the
convention of coset actions by right multiplication and is used everywhere.

Example:
    p = parse_cycles("(1 2 3 4)", 4)
    compose(p, p)            # (1 3)(2 4)
    fixed_points(p)          # frozenset()
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from derangement_lab.errors import (
    DegreeMismatch,
    MalformedCycles,
    PointOutOfRange,
)


@dataclass(frozen=True, slots=True, order=True)
class Permutation:
    """A bijection on {0, …, degree−1}; ordering is lexicographic on images."""

    images: tuple[int, ...]

    @classmethod
    def from_images(cls, images: Iterable[int]) -> "Permutation":
        """Build from an image sequence, checking it is a bijection."""
        imgs = tuple(int(x) for x in images)
        n = len(imgs)
        if n == 0:
            raise PointOutOfRange("a permutation needs degree >= 1")
        seen = [False] * n
        for x in imgs:
            if not 0 <= x < n:
                raise PointOutOfRange(f"image {x} outside 0..{n - 1}")
            if seen[x]:
                raise MalformedCycles(f"image {x} appears twice")
            seen[x] = True
        return cls(imgs)

    @property
    def degree(self) -> int:
        return len(self.images)

    def apply(self, point: int) -> int:
        """Image of ``point``."""
        if not 0 <= point < len(self.images):
            raise PointOutOfRange(f"point {point} outside 0..{len(self.images) - 1}")
        return self.images[point]

    def __str__(self) -> str:
        return format_cycles(self)


def identity(degree: int) -> Permutation:
    if degree < 1:
        raise PointOutOfRange("degree must be positive")
    return Permutation(tuple(range(degree)))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p`` then ``q``."""
    if len(p.images) != len(q.images):
        raise DegreeMismatch(f"cannot compose degree {p.degree} with degree {q.degree}")
    qi = q.images
    return Permutation(tuple(qi[i] for i in p.images))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p.images)
    for i, x in enumerate(p.images):
        inv[x] = i
    return Permutation(tuple(inv))


def power(p: Permutation, k: int) -> Permutation:
    """``p`` composed with itself ``k`` times (negative ``k`` allowed)."""
    if k < 0:
        p, k = inverse(p), -k
    result = identity(p.degree)
    base = p
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def fixed_points(p: Permutation) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(p.images) if x == i)


def is_derangement(p: Permutation) -> bool:
    return all(x != i for i, x in enumerate(p.images))


def cycles(p: Permutation) -> list[tuple[int, ...]]:
    """Non-trivial cycles, each starting at its smallest point, sorted."""
    seen = [False] * len(p.images)
    out: list[tuple[int, ...]] = []
    for start in range(len(p.images)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        x = p.images[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = p.images[x]
        if len(cyc) > 1:
            out.append(tuple(cyc))
    return out


def cycle_type(p: Permutation) -> tuple[int, ...]:
    """Cycle lengths including fixed points, descending."""
    lengths = [len(c) for c in cycles(p)]
    lengths.extend([1] * len(fixed_points(p)))
    return tuple(sorted(lengths, reverse=True))


def order(p: Permutation) -> int:
    return math.lcm(*(len(c) for c in cycles(p))) if cycles(p) else 1


# ----------------------------------------------------------------------------
# Cycle notation
# ----------------------------------------------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def format_cycles(p: Permutation) -> str:
    """1-based disjoint-cycle notation; the identity is ``"()"``."""
    cs = cycles(p)
    if not cs:
        return "()"
    return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cs)


def parse_cycles(text: str, degree: int) -> Permutation:
    """
    Parse 1-based disjoint-cycle notation.

    Grammar: ``perm := "()" | cycle+``, ``cycle := "(" int (" " int)* ")"``.
    Whitespace (and commas, as emitted by some systems) between points are
    tolerated.

    Raises:
        PointOutOfRange: a point is < 1 or > degree.
        MalformedCycles: a point repeats, or the text is not cycle notation.
    """
    if degree < 1:
        raise PointOutOfRange("degree must be positive")
    stripped = text.strip()
    if not stripped:
        raise MalformedCycles("empty cycle notation (use '()' for the identity)")
    leftover = _CYCLE_RE.sub("", stripped).strip()
    if leftover:
        raise MalformedCycles(f"unexpected text {leftover!r} in {text!r}")

    images = list(range(degree))
    seen: set[int] = set()
    for body in _CYCLE_RE.findall(stripped):
        tokens = body.replace(",", " ").split()
        if not tokens:
            continue
        points: list[int] = []
        for tok in tokens:
            try:
                value = int(tok)
            except ValueError:
                raise MalformedCycles(f"{tok!r} is not a point") from None
            if not 1 <= value <= degree:
                raise PointOutOfRange(f"point {value} outside 1..{degree}")
            if value in seen:
                raise MalformedCycles(f"point {value} repeated in {text!r}")
            seen.add(value)
            points.append(value - 1)
        for a, b in zip(points, points[1:] + points[:1]):
            images[a] = b
    return Permutation(tuple(images))


def parse_many(texts: Sequence[str], degree: int) -> list[Permutation]:
    return [parse_cycles(t, degree) for t in texts]

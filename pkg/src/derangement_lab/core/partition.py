"""
Partitions of {0, …, n−1}.

A partition is held canonically as a tuple of sorted tuples, ordered by
their smallest point, so equal partitions compare and hash equal.
"""
from __future__ import annotations

from typing import Iterable, Sequence

Partition = tuple[tuple[int, ...], ...]


class UnionFind:
    """Disjoint sets over 0..n−1 with path compression and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        """Merge the classes of x and y; False if already merged."""
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.size[x] < self.size[y]:
            x, y = y, x
        self.parent[y] = x
        self.size[x] += self.size[y]
        return True

    def classes(self) -> Partition:
        groups: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            groups.setdefault(self.find(x), []).append(x)
        return canonical(groups.values())


def canonical(blocks: Iterable[Iterable[int]]) -> Partition:
    """Sorted blocks, ordered by their smallest point; empty blocks dropped."""
    cleaned = [tuple(sorted(b)) for b in blocks]
    return tuple(sorted((b for b in cleaned if b), key=lambda b: b[0]))


def block_index(partition: Partition, degree: int) -> list[int]:
    """``result[p]`` is the position of the block containing point ``p``."""
    where = [-1] * degree
    for i, block in enumerate(partition):
        for p in block:
            where[p] = i
    return where


def is_partition_of(partition: Sequence[Sequence[int]], degree: int) -> bool:
    seen = [False] * degree
    for block in partition:
        for p in block:
            if not 0 <= p < degree or seen[p]:
                return False
            seen[p] = True
    return all(seen)


def refines(fine: Partition, coarse: Partition, degree: int) -> bool:
    """True if every block of ``fine`` lies inside a block of ``coarse``."""
    where = block_index(coarse, degree)
    return all(len({where[p] for p in block}) == 1 for block in fine)


def discrete(degree: int) -> Partition:
    return tuple((p,) for p in range(degree))


def trivial(degree: int) -> Partition:
    return (tuple(range(degree)),)


def one_based(partition: Partition) -> list[list[int]]:
    """Report form: sorted lists of sorted 1-based blocks."""
    return [[p + 1 for p in block] for block in partition]

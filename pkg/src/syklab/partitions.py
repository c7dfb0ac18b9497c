"""Pair partitions of {1..k} and their crossing numbers."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterator

from .errors import InvalidArgument, ResourceLimit

MAX_K = 16


@dataclass(frozen=True)
class PairPartition:
    """k/2 unordered pairs covering {1..k}; blocks ordered by smallest element."""

    k: int
    blocks: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.k < 0 or self.k % 2:
            raise InvalidArgument(f"pair partitions need even k, got {self.k}")
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        flat = sorted(i for b in blocks for i in b)
        if any(len(b) != 2 for b in blocks) or flat != list(range(1, self.k + 1)):
            raise InvalidArgument(f"{self.blocks} is not a pair partition of 1..{self.k}")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_pairs(cls, pairs) -> "PairPartition":
        pairs = tuple(tuple(p) for p in pairs)
        return cls(2 * len(pairs), pairs)

    def labels(self) -> tuple[int, ...]:
        """The 2-to-1 map: position (1-based) -> 0-based index of its block."""
        out = [0] * self.k
        for j, (a, b) in enumerate(self.blocks):
            out[a - 1] = out[b - 1] = j
        return tuple(out)

    def crossings(self) -> list[tuple[int, int]]:
        """Block index pairs (r, s), r < s, whose pairs interleave."""
        out = []
        for r, s in combinations(range(len(self.blocks)), 2):
            (a, c), (b, d) = self.blocks[r], self.blocks[s]
            if a < b < c < d or b < a < d < c:
                out.append((r, s))
        return out


def _pairings(items: tuple[int, ...]) -> Iterator[list[tuple[int, int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for i, partner in enumerate(rest):
        for tail in _pairings(rest[:i] + rest[i + 1:]):
            yield [(first, partner)] + tail


def iter_pair_partitions(k: int) -> Iterator[PairPartition]:
    if k < 0 or k % 2:
        raise InvalidArgument(f"pair partitions need even k, got {k}")
    if k > MAX_K:
        raise ResourceLimit(f"k={k} exceeds enumeration cap {MAX_K}")
    for pairs in _pairings(tuple(range(1, k + 1))):
        yield PairPartition(k, tuple(pairs))


def enumerate_pair_partitions(k: int) -> list[PairPartition]:
    return list(iter_pair_partitions(k))


def crossing_number(p: PairPartition) -> int:
    return len(p.crossings())


def _crossings_of_pairs(pairs) -> int:
    count = 0
    for (a, c), (b, d) in combinations(pairs, 2):
        if a < b < c < d or b < a < d < c:
            count += 1
    return count


@lru_cache(maxsize=None)
def crossing_histogram(k: int) -> dict[int, int]:
    """Number of pair partitions of {1..k} with each crossing number.

    Enumerates raw pairings directly (cheaper than building PairPartition
    objects); cached per k.
    """
    if k < 0 or k % 2:
        raise InvalidArgument(f"pair partitions need even k, got {k}")
    if k > MAX_K:
        raise ResourceLimit(f"k={k} exceeds enumeration cap {MAX_K}")
    hist = Counter(_crossings_of_pairs(p) for p in _pairings(tuple(range(1, k + 1))))
    return dict(sorted(hist.items()))


def double_factorial(m: int) -> int:
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def catalan(m: int) -> int:
    return comb(2 * m, m) // (m + 1)

# tporder/distance.py
"""
Transposition (Cayley) distance between permutations and between seeds.

``cayley_distance`` uses the cycle identity d(p, q) = n - cycles(p^-1 q);
``bfs_distance`` is the literal definition (shortest path in the graph of
single swaps) and exists as an oracle for small widths.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from . import config
from .factoradic import Permutation, check_seed
from .unranker import SeedOutOfRange, minimal_width, unrank_permutation

logger = logging.getLogger(__name__)

BFS_MAX_WIDTH = int(config["distance"]["bfs_max_width"])
BFS_CACHE_SIZE = int(config["distance"]["bfs_cache_size"])


@dataclass(frozen=True, slots=True)
class DistanceQuery:
    left: int
    right: int
    width: int | None = None

    def __post_init__(self) -> None:
        check_seed(self.left)
        check_seed(self.right)
        if self.width is not None:
            if minimal_width(max(self.left, self.right)) > self.width:
                raise SeedOutOfRange(
                    f"seeds ({self.left}, {self.right}) do not both fit width {self.width}"
                )

    def resolved_width(self) -> int:
        """Explicit width, or the common width max(minimal_width(left), minimal_width(right))."""
        if self.width is not None:
            return self.width
        return minimal_width(max(self.left, self.right))


def _relative(p: Permutation, q: Permutation) -> list[int]:
    # sigma[i] = position in p of q's i-th entry (0-based)
    if p.width != q.width:
        raise IncompatiblePermutations(f"widths differ: {p.width} vs {q.width}")
    pos = p.inverse().entries
    return [pos[v - 1] - 1 for v in q.entries]


def _cycles(sigma: list[int]) -> list[list[int]]:
    seen = [False] * len(sigma)
    cycles = []
    for start in range(len(sigma)):
        if seen[start]:
            continue
        cycle = []
        j = start
        while not seen[j]:
            seen[j] = True
            cycle.append(j)
            j = sigma[j]
        cycles.append(cycle)
    return cycles


def cayley_distance(p: Permutation, q: Permutation) -> int:
    """
    Minimum number of transpositions turning p into q: n minus the number of
    cycles of the permutation relating them.
    """
    sigma = _relative(p, q)
    seen = [False] * len(sigma)
    cycles = 0
    for start in range(len(sigma)):
        if seen[start]:
            continue
        cycles += 1
        j = start
        while not seen[j]:
            seen[j] = True
            j = sigma[j]
    return len(sigma) - cycles


def transpositions_between(p: Permutation, q: Permutation) -> list[tuple[int, int]]:
    """
    A shortest list of 1-based position swaps that, applied to p in order,
    yields q. Its length is ``cayley_distance(p, q)``.
    """
    swaps = []
    for cycle in _cycles(_relative(p, q)):
        # walking the cycle backwards settles one position per swap
        for j in reversed(cycle[1:]):
            a, b = sorted((cycle[0] + 1, j + 1))
            swaps.append((a, b))
    return swaps


@lru_cache(maxsize=BFS_CACHE_SIZE)
def _bfs_table(n: int) -> dict[tuple[int, ...], int]:
    # swaps act on positions, so distances from any source equal distances
    # from the identity to the relating permutation
    source = tuple(range(n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    dist = {source: 0}
    frontier = deque([source])
    while frontier:
        cur = frontier.popleft()
        nxt_d = dist[cur] + 1
        for i, j in pairs:
            nxt = list(cur)
            nxt[i], nxt[j] = nxt[j], nxt[i]
            t = tuple(nxt)
            if t not in dist:
                dist[t] = nxt_d
                frontier.append(t)
    logger.debug("Tabela BFS construída para n=%d (%d vértices)", n, len(dist))
    return dist


def bfs_distance(p: Permutation, q: Permutation) -> int:
    """
    Breadth-first search over the graph whose vertices are permutations and
    whose edges are single transpositions. Widths above the configured guard
    (8 by default) are refused.
    """
    if p.width != q.width:
        raise IncompatiblePermutations(f"widths differ: {p.width} vs {q.width}")
    if p.width > BFS_MAX_WIDTH:
        raise OracleSizeExceeded(f"BFS oracle limited to n <= {BFS_MAX_WIDTH}, got n = {p.width}")
    return _bfs_table(p.width)[tuple(_relative(p, q))]


def seed_distance(query: DistanceQuery) -> int:
    """Cayley distance between the permutations of both seeds at the query's width."""
    n = query.resolved_width()
    return cayley_distance(unrank_permutation(query.left, n), unrank_permutation(query.right, n))


def distance(left: int, right: int, n: int | None = None) -> int:
    return seed_distance(DistanceQuery(left, right, n))


class IncompatiblePermutations(ValueError):
    """
    Permutations of different widths cannot be compared
    """

    def __init__(self, message: str | None = None):
        super().__init__(message or self.__doc__)


class OracleSizeExceeded(ValueError):
    """
    Exhaustive oracle refused: width above the configured guard
    """

    def __init__(self, message: str | None = None):
        super().__init__(message or self.__doc__)

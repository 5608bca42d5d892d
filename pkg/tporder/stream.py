# tporder/stream.py
"""
Sequential enumeration of seed ranges with the transposition separating each
permutation from its predecessor, plus range partitioning so that chunks can
be enumerated by independent worker processes.
"""

from __future__ import annotations

import logging
import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import factorial
from typing import Iterator, Optional

from . import config
from .factoradic import FactoradicCode, Permutation, check_seed, decode_permutation
from .distance import IncompatiblePermutations
from .unranker import transposition_digits, unrank, unrank_permutation
from .utils import worker_count

logger = logging.getLogger(__name__)

MAX_WORKERS = int(config["stream"]["max_workers"])


@dataclass(frozen=True, slots=True, order=True)
class Transposition:
    pos_a: int
    pos_b: int

    def __post_init__(self) -> None:
        if not 1 <= self.pos_a < self.pos_b:
            raise ValueError(f"transposition needs 1 <= pos_a < pos_b, got ({self.pos_a}, {self.pos_b})")

    def apply(self, perm: Permutation) -> Permutation:
        return perm.swap(self.pos_a, self.pos_b)

    def as_list(self) -> list[int]:
        return [self.pos_a, self.pos_b]

    def __str__(self) -> str:
        return f"({self.pos_a},{self.pos_b})"


@dataclass(frozen=True, slots=True)
class DeltaStep:
    seed: int
    code: FactoradicCode
    perm: Permutation
    delta: Optional[Transposition]  # None only for the first step


@dataclass(frozen=True, slots=True)
class SeedRange:
    """Seeds start (inclusive) to end (exclusive) at width n."""

    start: int
    end: int
    width: int

    def __post_init__(self) -> None:
        check_seed(self.start)
        check_seed(self.end)
        if isinstance(self.width, bool) or not isinstance(self.width, int) or self.width < 1:
            raise InvalidRange(f"width must be a positive integer, got {self.width!r}")
        if not self.start <= self.end <= factorial(self.width):
            raise InvalidRange(
                f"need 0 <= start <= end <= {self.width}!, got [{self.start}, {self.end})"
            )

    @classmethod
    def full(cls, width: int) -> SeedRange:
        return cls(0, factorial(width), width)

    @property
    def size(self) -> int:
        return self.end - self.start

    def seeds(self) -> range:
        return range(self.start, self.end)

    def __str__(self) -> str:
        return f"[{self.start}, {self.end}) n={self.width}"


def delta(p: Permutation, q: Permutation) -> Optional[Transposition]:
    """
    The transposition separating two permutations: None when equal, the two
    differing 1-based positions when exactly two differ.
    """
    if p.width != q.width:
        raise IncompatiblePermutations(f"widths differ: {p.width} vs {q.width}")
    diff = [i for i, (a, b) in enumerate(zip(p.entries, q.entries), start=1) if a != b]
    if not diff:
        return None
    if len(diff) != 2:
        raise NotAdjacent(f"{p} and {q} differ in {len(diff)} positions, not 2")
    return Transposition(diff[0], diff[1])


def open_stream(seed_range: SeedRange, *, continue_from_previous: bool = False) -> Iterator[DeltaStep]:
    """
    One DeltaStep per seed in ascending order. Each step is unranked from its
    seed; the delta is computed against the previous step. With
    ``continue_from_previous`` the first step also carries a delta, taken
    against seed start-1, so chunk streams concatenate into the full stream.
    """
    n = seed_range.width
    prev: Optional[Permutation] = None
    if continue_from_previous and seed_range.start > 0:
        prev = unrank_permutation(seed_range.start - 1, n)
    for s in seed_range.seeds():
        code = unrank(s, n)
        perm = decode_permutation(code)
        step_delta = delta(prev, perm) if prev is not None else None
        if prev is not None and step_delta is None:
            raise NotAdjacent(f"seeds {s - 1} and {s} give the same permutation {perm}")
        yield DeltaStep(seed=s, code=code, perm=perm, delta=step_delta)
        prev = perm


def partition(seed_range: SeedRange, chunks: int) -> list[SeedRange]:
    """
    Splits a range into ``chunks`` contiguous, disjoint sub-ranges covering it
    exactly; sizes differ by at most one (the first ones take the remainder).
    """
    if isinstance(chunks, bool) or not isinstance(chunks, int) or chunks < 1:
        raise ValueError(f"chunks must be a positive integer, got {chunks!r}")
    base, extra = divmod(seed_range.size, chunks)
    out = []
    start = seed_range.start
    for i in range(chunks):
        end = start + base + (1 if i < extra else 0)
        out.append(SeedRange(start, end, seed_range.width))
        start = end
    return out


def _collect_chunk(sub: SeedRange, continue_from_previous: bool) -> list[DeltaStep]:
    return list(open_stream(sub, continue_from_previous=continue_from_previous))


def drain(seed_range: SeedRange, continue_from_previous: bool = False) -> tuple[int, int]:
    """
    Walks a stream without keeping it; returns (steps, deltas). Same checks as
    ``open_stream`` (exactly two positions change per step) on bare tuples.
    """
    n = seed_range.width
    prev: Optional[tuple[int, ...]] = None
    if continue_from_previous and seed_range.start > 0:
        prev = unrank_permutation(seed_range.start - 1, n).entries
    steps = deltas = 0
    for s in seed_range.seeds():
        digits = transposition_digits(s, n)
        remaining = list(range(1, n + 1))
        entries = tuple(remaining.pop(digits[k]) for k in range(n - 1, -1, -1))
        if prev is not None:
            changed = sum(1 for a, b in zip(prev, entries) if a != b)
            if changed != 2:
                raise NotAdjacent(f"seeds {s - 1} and {s} differ in {changed} positions, not 2")
            deltas += 1
        steps += 1
        prev = entries
    return steps, deltas


def _pool(workers: int) -> ProcessPoolExecutor:
    ctx = multiprocessing.get_context("spawn")
    return ProcessPoolExecutor(max_workers=workers, mp_context=ctx)


def stream_chunks(
    seed_range: SeedRange, chunks: int, workers: int | None = None
) -> Iterator[DeltaStep]:
    """
    The stream of ``seed_range`` computed chunk by chunk, possibly in worker
    processes. Output is in seed order and identical to ``open_stream``.
    """
    parts = partition(seed_range, chunks)
    leads = [p.start > seed_range.start for p in parts]
    workers = min(worker_count(workers, MAX_WORKERS), chunks)
    if workers <= 1:
        for sub, lead in zip(parts, leads):
            yield from open_stream(sub, continue_from_previous=lead)
        return
    logger.info("Distribuindo %s em %d blocos para %d processos", seed_range, chunks, workers)
    with _pool(workers) as ex:
        # map keeps submission order, so seeds come out ascending
        for steps in ex.map(_collect_chunk, parts, leads):
            yield from steps


def drain_chunks(seed_range: SeedRange, chunks: int, workers: int | None = None) -> tuple[int, int]:
    """Counts (steps, deltas) of a chunked stream without shipping the steps back."""
    parts = partition(seed_range, chunks)
    leads = [p.start > seed_range.start for p in parts]
    workers = min(worker_count(workers, MAX_WORKERS), chunks)
    if workers <= 1:
        results = [drain(sub, lead) for sub, lead in zip(parts, leads)]
    else:
        with _pool(workers) as ex:
            results = list(ex.map(drain, parts, leads))
    return sum(r[0] for r in results), sum(r[1] for r in results)


class NotAdjacent(ValueError):
    """
    Consecutive permutations are not one transposition apart
    """

    def __init__(self, message: str | None = None):
        super().__init__(message or self.__doc__)


class InvalidRange(ValueError):
    """
    Invalid seed range: need 0 <= start <= end <= n!
    """

    def __init__(self, message: str | None = None):
        super().__init__(message or self.__doc__)

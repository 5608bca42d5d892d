# tporder/verify.py
"""
Executable checks for the properties of the transposition-order unranker.

Every check returns a VerificationReport; violations are collected, never
raised, so one run reports every failure. Checks run exhaustively up to the
configured widths (7 for bijection/adjacency/round trips, 6 for pairwise
distance properties, 4 for triples) and on a seeded uniform sample beyond.
"""

from __future__ import annotations

import logging
import random
import time
from collections import deque
from dataclasses import dataclass, field
from math import factorial
from typing import Callable, Iterable, Optional

from tqdm import tqdm

from . import config
from .distance import OracleSizeExceeded, bfs_distance, cayley_distance
from .factoradic import FactoradicCode, Permutation, decode_permutation
from .stream import InvalidRange, SeedRange, _pool, partition
from .types import ReportRecord, ViolationRecord
from .unranker import rank, unrank, unrank_permutation
from .utils import _int_env, worker_count

logger = logging.getLogger(__name__)

_cfg = config["verify"]
EXHAUSTIVE_ADJACENCY_MAX = int(_cfg["exhaustive_adjacency_max"])
EXHAUSTIVE_PAIRWISE_MAX = int(_cfg["exhaustive_pairwise_max"])
EXHAUSTIVE_TRIPLES_MAX = int(_cfg["exhaustive_triples_max"])
EXHAUSTIVE_ORACLE_MAX = int(_cfg["exhaustive_oracle_max"])
GUARD_MAX_WIDTH = int(_cfg["guard_max_width"])

Unranker = Callable[[int, int], Permutation]


# ---------- tipos


@dataclass(frozen=True, slots=True, order=True)
class Violation:
    seeds: tuple[int, ...]
    observed: int
    relation: str  # the relation "observed <relation> bound" that failed to hold
    bound: int

    def to_record(self) -> ViolationRecord:
        return {
            "seeds": [str(s) for s in self.seeds],
            "observed": self.observed,
            "relation": self.relation,
            "bound": self.bound,
        }


@dataclass(frozen=True, slots=True)
class SampleSpec:
    count: int
    rng_seed: int

    def __post_init__(self) -> None:
        if self.count < 1:
            raise ValueError(f"sample size must be positive, got {self.count}")

    @classmethod
    def default(cls, rng_seed: Optional[int] = None) -> SampleSpec:
        """Configured sample size and seed; an explicit rng_seed wins over TPORDER_RNG_SEED."""
        if rng_seed is None:
            rng_seed = _int_env("TPORDER_RNG_SEED", int(_cfg["default_rng_seed"]))
        return cls(count=_int_env("TPORDER_SAMPLE", int(_cfg["default_sample"])), rng_seed=rng_seed)

    def rng(self) -> random.Random:
        return random.Random(self.rng_seed)


@dataclass
class VerificationReport:
    property: str
    n: int
    seeds_checked: int = 0
    violations: list[Violation] = field(default_factory=list)
    elapsed: float = 0.0
    exhaustive: bool = True
    rng_seed: Optional[int] = None

    @property
    def passed(self) -> bool:
        return not self.violations

    def merge(self, other: VerificationReport) -> VerificationReport:
        """Combines reports of the same property over disjoint inputs."""
        if (self.property, self.n) != (other.property, other.n):
            raise ValueError(
                f"cannot merge {self.property}@{self.n} with {other.property}@{other.n}"
            )
        return VerificationReport(
            property=self.property,
            n=self.n,
            seeds_checked=self.seeds_checked + other.seeds_checked,
            violations=sorted(self.violations + other.violations),
            elapsed=self.elapsed + other.elapsed,
            exhaustive=self.exhaustive and other.exhaustive,
            rng_seed=self.rng_seed if self.rng_seed is not None else other.rng_seed,
        )

    def to_record(self, timing: bool = False) -> ReportRecord:
        record: ReportRecord = {
            "property": self.property,
            "n": self.n,
            "seeds_checked": self.seeds_checked,
            "passed": self.passed,
            "exhaustive": self.exhaustive,
            "rng_seed": self.rng_seed,
            "violations": [v.to_record() for v in self.violations],
        }
        if timing:
            record["elapsed"] = round(self.elapsed, 6)
        return record

    def summary(self, timing: bool = False) -> str:
        mode = "exhaustive" if self.exhaustive else f"sampled rng_seed={self.rng_seed}"
        line = (
            f"{self.property} n={self.n} checked={self.seeds_checked} "
            f"violations={len(self.violations)} {mode}"
        )
        if timing:
            line += f" elapsed={self.elapsed:.3f}s"
        return line


class _Timer:
    def __init__(self, report: VerificationReport):
        self.report = report

    def __enter__(self) -> VerificationReport:
        self._t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc) -> None:
        self.report.elapsed += time.perf_counter() - self._t0
        r = self.report
        if r.violations:
            logger.warning("✗ %s n=%d: %d violação(ões)", r.property, r.n, len(r.violations))
        else:
            logger.info("✓ %s n=%d: %d verificações", r.property, r.n, r.seeds_checked)


# ---------- injeção de falhas


@dataclass(frozen=True, slots=True)
class DigitFlipFault:
    """
    Unranker that toggles digit f_1 of the code at one seed. f_1 in {0, 1}
    swaps the last two entries, so the faulty permutation changes parity and
    can no longer sit one transposition away from both neighbours.
    """

    seed: int

    def __call__(self, s: int, n: int) -> Permutation:
        code = unrank(s, n)
        if s == self.seed and n >= 2:
            digits = list(code.digits)
            digits[1] = 1 - digits[1]
            code = FactoradicCode(tuple(digits))
        return decode_permutation(code)


# ---------- helpers


def _guard(n: int, what: str) -> None:
    if n > GUARD_MAX_WIDTH:
        raise OracleSizeExceeded(f"{what} is exhaustive and limited to n <= {GUARD_MAX_WIDTH}, got n = {n}")


def _progress(it: Iterable, total: int, desc: str) -> Iterable:
    return tqdm(it, total=total, desc=desc, leave=False, disable=None)


def _random_seeds(rng: random.Random, n: int, count: int, upper: Optional[int] = None) -> list[int]:
    upper = factorial(n) if upper is None else upper
    return [rng.randrange(upper) for _ in range(count)]


def _perm_table(n: int, unrank_fn: Unranker) -> list[Permutation]:
    return [unrank_fn(s, n) for s in range(factorial(n))]


# ---------- verificações


def check_bijection(n: int, unrank_fn: Unranker = unrank_permutation) -> VerificationReport:
    """All n! seeds give pairwise distinct permutations."""
    _guard(n, "bijection check")
    report = VerificationReport("bijection", n)
    with _Timer(report):
        first_seen: dict[Permutation, int] = {}
        total = factorial(n)
        for s in _progress(range(total), total, "bijection"):
            p = unrank_fn(s, n)
            if p in first_seen:
                # distinct seeds must sit at distance >= 1
                report.violations.append(Violation((first_seen[p], s), 0, ">=", 1))
            else:
                first_seen[p] = s
        report.seeds_checked = total
    return report


def _gap_scan(seed_range: SeedRange, gap: int, unrank_fn: Unranker, name: str, progress: bool = False) -> VerificationReport:
    # pairs (s, s + gap) for s in seed_range; expects distance exactly gap
    n = seed_range.width
    report = VerificationReport(name, n)
    with _Timer(report):
        window: deque[Permutation] = deque()
        first = seed_range.start
        for s in range(first, first + gap):
            window.append(unrank_fn(s, n))
        seeds = seed_range.seeds()
        if progress:
            seeds = _progress(seeds, seed_range.size, name)
        for s in seeds:
            ahead = unrank_fn(s + gap, n)
            d = cayley_distance(window.popleft(), ahead)
            if d != gap:
                report.violations.append(Violation((s, s + gap), d, "==", gap))
            window.append(ahead)
        report.seeds_checked = seed_range.size
    return report


def _scan_range(
    seed_range: SeedRange, gap: int, name: str, unrank_fn: Unranker, workers: Optional[int]
) -> VerificationReport:
    if seed_range.size < gap + 1:
        raise InvalidRange(f"{name} needs a range of length >= {gap + 1}, got {seed_range}")
    pairs = SeedRange(seed_range.start, seed_range.end - gap, seed_range.width)
    workers = worker_count(workers)
    if workers <= 1 or pairs.size < 2 * workers:
        return _gap_scan(pairs, gap, unrank_fn, name, progress=True)
    parts = partition(pairs, workers)
    logger.info("%s: %d blocos em paralelo", name, len(parts))
    with _pool(workers) as ex:
        reports = list(
            ex.map(_gap_scan, parts, [gap] * len(parts), [unrank_fn] * len(parts), [name] * len(parts))
        )
    merged = reports[0]
    for r in reports[1:]:
        merged = merged.merge(r)
    return merged


def check_adjacency(
    seed_range: SeedRange, unrank_fn: Unranker = unrank_permutation, workers: Optional[int] = None
) -> VerificationReport:
    """d(s, s+1) = 1 for every consecutive pair inside the range."""
    return _scan_range(seed_range, 1, "adjacency", unrank_fn, workers)


def check_step2(
    seed_range: SeedRange, unrank_fn: Unranker = unrank_permutation, workers: Optional[int] = None
) -> VerificationReport:
    """
    d(s, s+2) = 2 inside the range. Only "<= 2" follows from the distance
    bound; equality is checked as stated and any smaller value is reported.
    """
    return _scan_range(seed_range, 2, "step2", unrank_fn, workers)


def _sampled_gap(n: int, gap: int, name: str, sample: SampleSpec, unrank_fn: Unranker) -> VerificationReport:
    total = factorial(n)
    report = VerificationReport(name, n, exhaustive=False, rng_seed=sample.rng_seed)
    if total <= gap:
        return report
    with _Timer(report):
        for s in _progress(_random_seeds(sample.rng(), n, sample.count, total - gap), sample.count, name):
            d = cayley_distance(unrank_fn(s, n), unrank_fn(s + gap, n))
            if d != gap:
                report.violations.append(Violation((s, s + gap), d, "==", gap))
        report.seeds_checked = sample.count
    return report


def check_adjacency_sampled(n: int, sample: SampleSpec, unrank_fn: Unranker = unrank_permutation) -> VerificationReport:
    """d(s, s+1) = 1 at uniformly drawn seeds of width n (any size of n)."""
    return _sampled_gap(n, 1, "adjacency", sample, unrank_fn)


def check_step2_sampled(n: int, sample: SampleSpec, unrank_fn: Unranker = unrank_permutation) -> VerificationReport:
    return _sampled_gap(n, 2, "step2", sample, unrank_fn)


def _pairs(
    n: int, sample: Optional[SampleSpec], fallback: Optional[SampleSpec] = None
) -> tuple[Optional[SampleSpec], Iterable[tuple[int, int]], int]:
    if sample is None and n <= EXHAUSTIVE_PAIRWISE_MAX:
        total = factorial(n)
        return None, ((a, b) for a in range(total) for b in range(total)), total * total
    sample = sample or fallback or SampleSpec.default()
    rng = sample.rng()
    total = factorial(n)
    pairs = [(rng.randrange(total), rng.randrange(total)) for _ in range(sample.count)]
    return sample, pairs, sample.count


def _perm_getter(n: int, exhaustive: bool, unrank_fn: Unranker) -> Callable[[int], Permutation]:
    if exhaustive:
        table = _perm_table(n, unrank_fn)
        return table.__getitem__
    return lambda s: unrank_fn(s, n)


def check_distance_bound(
    n: int, sample: Optional[SampleSpec] = None, unrank_fn: Unranker = unrank_permutation,
    fallback: Optional[SampleSpec] = None,
) -> VerificationReport:
    """d(s, s') <= min(|s - s'|, n - 1) over all pairs (n <= 6) or a sample."""
    sample, pairs, count = _pairs(n, sample, fallback)
    report = VerificationReport("distance-bound", n, exhaustive=sample is None,
                                rng_seed=sample.rng_seed if sample else None)
    with _Timer(report):
        perm = _perm_getter(n, sample is None, unrank_fn)
        for a, b in _progress(pairs, count, "distance-bound"):
            bound = min(abs(a - b), n - 1)
            d = cayley_distance(perm(a), perm(b))
            if d > bound:
                report.violations.append(Violation((a, b), d, "<=", bound))
        report.seeds_checked = count
    return report


def check_radius(k: int, unrank_fn: Unranker = unrank_permutation) -> VerificationReport:
    """
    d(s, 0) <= j - 1 for every s < k!, where j is the smallest width with
    s < j!; this covers the bound for every width up to k at once.
    """
    _guard(k, "radius check")
    report = VerificationReport("radius", k)
    with _Timer(report):
        identity = Permutation.identity(k)
        total = factorial(k)
        j, j_fact = 1, 1
        for s in _progress(range(total), total, "radius"):
            while s >= j_fact:
                j += 1
                j_fact *= j
            d = cayley_distance(unrank_fn(s, k), identity)
            if d > j - 1:
                report.violations.append(Violation((s, 0), d, "<=", j - 1))
        report.seeds_checked = total
    return report


def check_reverse_triangle(
    n: int, sample: Optional[SampleSpec] = None, unrank_fn: Unranker = unrank_permutation,
    fallback: Optional[SampleSpec] = None,
) -> VerificationReport:
    """|d(s, 0) - d(s', 0)| <= d(s, s') over all pairs (n <= 6) or a sample."""
    sample, pairs, count = _pairs(n, sample, fallback)
    report = VerificationReport("reverse-triangle", n, exhaustive=sample is None,
                                rng_seed=sample.rng_seed if sample else None)
    with _Timer(report):
        perm = _perm_getter(n, sample is None, unrank_fn)
        origin = perm(0)
        radius: dict[int, int] = {}

        def to_origin(s: int, p: Permutation) -> int:
            if s not in radius:
                radius[s] = cayley_distance(p, origin)
            return radius[s]

        for a, b in _progress(pairs, count, "reverse-triangle"):
            pa, pb = perm(a), perm(b)
            lhs = abs(to_origin(a, pa) - to_origin(b, pb))
            d = cayley_distance(pa, pb)
            if lhs > d:
                report.violations.append(Violation((a, b), lhs, "<=", d))
        report.seeds_checked = count
    return report


def check_metric_axioms(
    n: int, sample: Optional[SampleSpec] = None, unrank_fn: Unranker = unrank_permutation,
    fallback: Optional[SampleSpec] = None,
) -> VerificationReport:
    """
    Non-negativity, d = 0 iff equal permutations, symmetry and the triangle
    inequality, over all seed triples (n <= 4) or sampled triples.
    """
    total = factorial(n)
    exhaustive = sample is None and n <= EXHAUSTIVE_TRIPLES_MAX
    if not exhaustive:
        sample = sample or fallback or SampleSpec.default()
    report = VerificationReport("metric", n, exhaustive=exhaustive,
                                rng_seed=None if exhaustive else sample.rng_seed)
    with _Timer(report):
        if exhaustive:
            perms = _perm_table(n, unrank_fn)
            dist = [[cayley_distance(p, q) for q in perms] for p in perms]
            triples: Iterable[tuple[int, int, int]] = (
                (a, b, c) for a in range(total) for b in range(total) for c in range(total)
            )
            count = total ** 3
            perm = perms.__getitem__
            d = lambda a, b: dist[a][b]  # noqa: E731
        else:
            rng = sample.rng()
            triples = [tuple(rng.randrange(total) for _ in range(3)) for _ in range(sample.count)]
            count = sample.count
            perm = lambda s: unrank_fn(s, n)  # noqa: E731
            d = lambda a, b: cayley_distance(perm(a), perm(b))  # noqa: E731

        for a, b, c in _progress(triples, count, "metric"):
            dab = d(a, b)
            if dab < 0:
                report.violations.append(Violation((a, b), dab, ">=", 0))
            same = perm(a) == perm(b)
            if same and dab != 0:
                report.violations.append(Violation((a, b), dab, "==", 0))
            elif not same and dab == 0:
                report.violations.append(Violation((a, b), dab, ">=", 1))
            dba = d(b, a)
            if dab != dba:
                report.violations.append(Violation((a, b), dab, "==", dba))
            detour = d(a, c) + d(c, b)
            if dab > detour:
                report.violations.append(Violation((a, b, c), dab, "<=", detour))
        report.seeds_checked = count
    return report


def check_round_trip(
    n: int, sample: Optional[SampleSpec] = None, fallback: Optional[SampleSpec] = None
) -> VerificationReport:
    """
    rank(unrank(s)) = s and unrank(rank(c)) = c, for every seed (n <= 7) or
    for sampled seeds and sampled codes.
    """
    exhaustive = sample is None and n <= EXHAUSTIVE_ADJACENCY_MAX
    if not exhaustive:
        sample = sample or fallback or SampleSpec.default()
    report = VerificationReport("round-trip", n, exhaustive=exhaustive,
                                rng_seed=None if exhaustive else sample.rng_seed)
    with _Timer(report):
        if exhaustive:
            seeds: Iterable[int] = range(factorial(n))
            count = factorial(n)
        else:
            rng = sample.rng()
            seeds = _random_seeds(rng, n, sample.count)
            count = sample.count
        for s in _progress(seeds, count, "round-trip"):
            back = rank(unrank(s, n))
            if back != s:
                report.violations.append(Violation((s,), back, "==", s))
        if not exhaustive:
            for _ in range(sample.count):
                code = FactoradicCode(tuple(rng.randrange(i + 1) for i in range(n)))
                s = rank(code)
                again = unrank(s, n)
                if again != code:
                    mismatches = sum(x != y for x, y in zip(again.digits, code.digits))
                    report.violations.append(Violation((s,), mismatches, "==", 0))
            count *= 2
        report.seeds_checked = count
    return report


def check_padding(
    n: int, sample: Optional[SampleSpec] = None, fallback: Optional[SampleSpec] = None
) -> VerificationReport:
    """
    unrank(s, n') equals unrank(s, n) with zeros prepended, for n' = n+1, n+2.
    Violations count the digits that differ.
    """
    exhaustive = sample is None and n <= EXHAUSTIVE_ADJACENCY_MAX
    if not exhaustive:
        sample = sample or fallback or SampleSpec.default()
    report = VerificationReport("padding", n, exhaustive=exhaustive,
                                rng_seed=None if exhaustive else sample.rng_seed)
    with _Timer(report):
        if exhaustive:
            seeds: Iterable[int] = range(factorial(n))
            count = factorial(n)
        else:
            seeds = _random_seeds(sample.rng(), n, sample.count)
            count = sample.count
        for s in _progress(seeds, count, "padding"):
            base = unrank(s, n)
            for wider in (n + 1, n + 2):
                got = unrank(s, wider)
                want = base.padded(wider)
                if got != want:
                    mismatches = sum(x != y for x, y in zip(got.digits, want.digits))
                    report.violations.append(Violation((s,), mismatches, "==", 0))
        report.seeds_checked = count
    return report


def check_oracle(
    n: int, sample: Optional[SampleSpec] = None, fallback: Optional[SampleSpec] = None
) -> VerificationReport:
    """cayley_distance agrees with the BFS oracle on all pairs (n <= 4) or a sample."""
    _guard(n, "BFS oracle")
    total = factorial(n)
    exhaustive = sample is None and n <= EXHAUSTIVE_ORACLE_MAX
    if not exhaustive:
        sample = sample or fallback or SampleSpec.default()
    report = VerificationReport("oracle", n, exhaustive=exhaustive,
                                rng_seed=None if exhaustive else sample.rng_seed)
    with _Timer(report):
        if exhaustive:
            pairs: Iterable[tuple[int, int]] = ((a, b) for a in range(total) for b in range(total))
            count = total * total
        else:
            rng = sample.rng()
            pairs = [(rng.randrange(total), rng.randrange(total)) for _ in range(sample.count)]
            count = sample.count
        for a, b in _progress(pairs, count, "oracle"):
            p, q = unrank_permutation(a, n), unrank_permutation(b, n)
            fast, slow = cayley_distance(p, q), bfs_distance(p, q)
            if fast != slow:
                report.violations.append(Violation((a, b), fast, "==", slow))
        report.seeds_checked = count
    return report


# ---------- suíte


def _suite_adjacency(n, sample, unrank_fn, workers, fallback):
    if sample is None and n <= EXHAUSTIVE_ADJACENCY_MAX:
        if factorial(n) < 2:
            return VerificationReport("adjacency", n)
        return check_adjacency(SeedRange.full(n), unrank_fn, workers)
    return check_adjacency_sampled(n, sample or fallback or SampleSpec.default(), unrank_fn)


def _suite_step2(n, sample, unrank_fn, workers, fallback):
    if sample is None and n <= EXHAUSTIVE_ADJACENCY_MAX:
        if factorial(n) < 3:
            return VerificationReport("step2", n)
        return check_step2(SeedRange.full(n), unrank_fn, workers)
    return check_step2_sampled(n, sample or fallback or SampleSpec.default(), unrank_fn)


PROPERTIES: dict[str, Callable[..., VerificationReport]] = {
    "bijection": lambda n, sample, fn, workers, fallback: check_bijection(n, fn),
    "adjacency": _suite_adjacency,
    "step2": _suite_step2,
    "distance-bound": lambda n, sample, fn, workers, fallback: check_distance_bound(n, sample, fn, fallback),
    "radius": lambda n, sample, fn, workers, fallback: check_radius(n, fn),
    "reverse-triangle": lambda n, sample, fn, workers, fallback: check_reverse_triangle(n, sample, fn, fallback),
    "metric": lambda n, sample, fn, workers, fallback: check_metric_axioms(n, sample, fn, fallback),
    "round-trip": lambda n, sample, fn, workers, fallback: check_round_trip(n, sample, fallback),
    "padding": lambda n, sample, fn, workers, fallback: check_padding(n, sample, fallback),
    "oracle": lambda n, sample, fn, workers, fallback: check_oracle(n, sample, fallback),
}


def run_suite(
    n: int,
    names: Optional[list[str]] = None,
    sample: Optional[SampleSpec] = None,
    unrank_fn: Unranker = unrank_permutation,
    workers: Optional[int] = None,
    rng_seed: Optional[int] = None,
) -> list[VerificationReport]:
    """
    Runs the named properties (all when ``names`` is None) at width n.
    With every property selected, exhaustive-only checks whose width guard is
    exceeded are skipped with a warning; a single named property propagates
    the guard error instead. ``rng_seed`` seeds the checks that fall back
    to sampling because n is above their exhaustive limit.
    """
    selected = list(PROPERTIES) if names is None else names
    for name in selected:
        if name not in PROPERTIES:
            raise ValueError(f"unknown property {name!r}; choose from {', '.join(PROPERTIES)}")
    fallback = SampleSpec.default(rng_seed) if rng_seed is not None else None
    reports = []
    for name in selected:
        try:
            reports.append(PROPERTIES[name](n, sample, unrank_fn, workers, fallback))
        except OracleSizeExceeded as e:
            if names is not None:
                raise
            logger.warning("Pulando %s: %s", name, e)
    return reports

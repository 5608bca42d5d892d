# tporder/unranker.py
"""
Seed -> factoradic code in transposition order, and back.

For k = n down to 1, with d_{n+1} = 0:

    x_k     = floor((s mod k!) / (k-1)!)
    d_k     = floor((floor((s + d_{k+1} (k+1)!) / k!) mod (k+1)^2) / (k+2))
    f_{k-1} = (x_k - floor(s / k!) - d_k) mod k      (non-negative mod)

One upward pass of divmods by 1, 2, ..., n yields both x_k (the standard
factoradic digit at position k-1) and Q_k = floor(s / k!). Because k! divides
d_{k+1} (k+1)!, the inner quotient of d_k is exactly Q_k + (k+1) d_{k+1}, so
no factorial is ever materialised.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import factorial

from .factoradic import (
    FactoradicCode,
    Permutation,
    WidthTooSmall,
    check_seed,
    decode_permutation,
    encode_permutation,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class TraceStep:
    k: int
    x: int  # x_k
    q: int  # floor(s / k!)
    d: int  # d_k
    f: int  # f_{k-1}


@dataclass(frozen=True, slots=True)
class UnrankTrace:
    seed: int
    steps: tuple[TraceStep, ...]  # k = n down to 1

    @property
    def width(self) -> int:
        return len(self.steps)

    def step(self, k: int) -> TraceStep:
        return self.steps[self.width - k]


def minimal_width(s: int) -> int:
    """
    Smallest n >= 1 with s <= n! - 1.
    """
    check_seed(s)
    n, fact = 1, 1
    while s >= fact:
        n += 1
        fact *= n
    return n


def _resolve_width(s: int, n: int | None) -> int:
    check_seed(s)
    if n is None:
        return minimal_width(s)
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise WidthTooSmall(f"width must be a positive integer, got {n!r}")
    return n


def _upward(s: int, n: int) -> tuple[list[int], list[int]]:
    # xs[k] = x_k, qs[k] = floor(s / k!) for k = 1..n (index 0 unused)
    xs = [0] * (n + 1)
    qs = [0] * (n + 1)
    q = s
    for k in range(1, n + 1):
        q, xs[k] = divmod(q, k)
        qs[k] = q
    if q:
        raise SeedOutOfRange(f"seed {s} exceeds {n}!-1 = {factorial(n) - 1}")
    return xs, qs


def transposition_digits(s: int, n: int) -> list[int]:
    """
    Digits of the transposition-order code, by factorial position. No input
    validation beyond the range check; ``unrank`` is the checked entry point.
    """
    xs, qs = _upward(s, n)
    digits = [0] * n
    d = 0
    for k in range(n, 0, -1):
        q = qs[k]
        k1 = k + 1
        d = ((q + k1 * d) % (k1 * k1)) // (k + 2)
        digits[k - 1] = (xs[k] - q - d) % k
    return digits


def unrank(s: int, n: int | None = None) -> FactoradicCode:
    """
    Transposition-order code of seed s at width n (default: minimal width).
    """
    n = _resolve_width(s, n)
    return FactoradicCode._trusted(tuple(transposition_digits(s, n)))


def unrank_with_trace(s: int, n: int | None = None) -> tuple[FactoradicCode, UnrankTrace]:
    """
    Same as ``unrank`` but also returns every intermediate value. Under
    ``__debug__`` the d_k quotient is re-evaluated literally with explicit
    factorials and checked against the divisibility shortcut.
    """
    n = _resolve_width(s, n)
    xs, qs = _upward(s, n)
    facts = [1] * (n + 2)
    for i in range(1, n + 2):
        facts[i] = facts[i - 1] * i

    digits = [0] * n
    steps = []
    d = 0
    for k in range(n, 0, -1):
        q = qs[k]
        inner = q + (k + 1) * d
        if __debug__:
            literal = (s + d * facts[k + 1]) // facts[k]
            assert literal == inner, f"d_k shortcut mismatch at k={k}: {literal} != {inner}"
            assert xs[k] == (s % facts[k]) // facts[k - 1]
        d = (inner % ((k + 1) ** 2)) // (k + 2)
        f = (xs[k] - q - d) % k
        digits[k - 1] = f
        steps.append(TraceStep(k=k, x=xs[k], q=q, d=d, f=f))
    return FactoradicCode._trusted(tuple(digits)), UnrankTrace(seed=s, steps=tuple(steps))


def unrank_permutation(s: int, n: int | None = None) -> Permutation:
    """The permutation at seed s: ``decode_permutation(unrank(s, n))``."""
    return decode_permutation(unrank(s, n))


def rank(code: FactoradicCode) -> int:
    """
    Inverse of ``unrank``: recovers the seed from a transposition-order code.

    Walks k = n down to 1 keeping Q_k = floor(s / k!) built from the digits
    already recovered; the standard digit is a_{k-1} = (f_{k-1} + Q_k + d_k) mod k
    and Q_{k-1} = k Q_k + a_{k-1}, so Q_0 is the seed.
    """
    if not isinstance(code, FactoradicCode):
        code = FactoradicCode(tuple(code))
    digits = code.digits
    q = 0
    d = 0
    for k in range(code.width, 0, -1):
        k1 = k + 1
        d = ((q + k1 * d) % (k1 * k1)) // (k + 2)
        a = (digits[k - 1] + q + d) % k
        q = q * k + a
    return q


def rank_permutation(perm: Permutation) -> int:
    return rank(encode_permutation(perm))


class SeedOutOfRange(ValueError):
    """
    Seed out of range: the width n must satisfy s <= n!-1
    """

    def __init__(self, message: str | None = None):
        super().__init__(message or self.__doc__)

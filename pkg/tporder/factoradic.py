# tporder/factoradic.py
"""
Factoradic codec: integers <-> factoradic digit vectors <-> permutations.

A code of width n stores its digits by factorial position: ``digits[i]`` is
the coefficient of ``i!`` and is bounded by ``i``. User-facing renderings are
most-significant-first (``f_{n-1} ... f_0``), permutations are one-line over
the values ``1..n``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import config

logger = logging.getLogger(__name__)

FENWICK_MIN_WIDTH = int(config["unrank"]["fenwick_min_width"])


# ---------- tipos


@dataclass(frozen=True, slots=True)
class FactoradicCode:
    """
    Digit vector of a factoradic number, indexed by factorial position.
    """

    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        digits = tuple(self.digits)
        object.__setattr__(self, "digits", digits)
        if not digits:
            raise InvalidCode("a factoradic code needs at least one digit")
        for i, d in enumerate(digits):
            if isinstance(d, bool) or not isinstance(d, int) or not 0 <= d <= i:
                raise InvalidCode(f"digit at position {i} is {d!r}, must satisfy 0 <= digit <= {i}")

    @classmethod
    def _trusted(cls, digits: tuple[int, ...]) -> FactoradicCode:
        # hot paths that already produce bounded digits skip validation
        code = object.__new__(cls)
        object.__setattr__(code, "digits", digits)
        return code

    @classmethod
    def from_msd(cls, digits: Iterable[int]) -> FactoradicCode:
        """Builds a code from digits written most-significant-first."""
        return cls(tuple(reversed(tuple(digits))))

    @property
    def width(self) -> int:
        return len(self.digits)

    def msd(self) -> tuple[int, ...]:
        """Digits most-significant-first, f_{n-1} first."""
        return self.digits[::-1]

    def notation(self) -> str:
        """Subscripted rendering, e.g. ``2_5 1_4 2_3 2_2 0_1 0_0``."""
        return " ".join(f"{d}_{i}" for i, d in reversed(list(enumerate(self.digits))))

    def padded(self, width: int) -> FactoradicCode:
        """The same number at a larger width (zeros prepended on the MSD side)."""
        if width < self.width:
            raise WidthTooSmall(f"cannot shrink a width-{self.width} code to width {width}")
        return FactoradicCode._trusted(self.digits + (0,) * (width - self.width))

    def __str__(self) -> str:
        return " ".join(str(d) for d in self.msd())


@dataclass(frozen=True, slots=True)
class Permutation:
    """
    One-line permutation of 1..n.
    """

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        n = len(entries)
        if n == 0:
            raise InvalidPermutation("a permutation needs at least one entry")
        seen = [False] * (n + 1)
        for pos, v in enumerate(entries, start=1):
            if isinstance(v, bool) or not isinstance(v, int) or not 1 <= v <= n:
                raise InvalidPermutation(f"entry {v!r} at position {pos} is outside 1..{n}")
            if seen[v]:
                raise InvalidPermutation(f"entry {v} appears more than once")
            seen[v] = True

    @classmethod
    def _trusted(cls, entries: tuple[int, ...]) -> Permutation:
        perm = object.__new__(cls)
        object.__setattr__(perm, "entries", entries)
        return perm

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls._trusted(tuple(range(1, _check_width(n) + 1)))

    @property
    def width(self) -> int:
        return len(self.entries)

    def swap(self, pos_a: int, pos_b: int) -> Permutation:
        """Exchanges the entries at two 1-based positions."""
        n = self.width
        if not (1 <= pos_a <= n and 1 <= pos_b <= n):
            raise InvalidPermutation(f"positions ({pos_a}, {pos_b}) outside 1..{n}")
        out = list(self.entries)
        out[pos_a - 1], out[pos_b - 1] = out[pos_b - 1], out[pos_a - 1]
        return Permutation._trusted(tuple(out))

    def inverse(self) -> Permutation:
        out = [0] * self.width
        for pos, v in enumerate(self.entries, start=1):
            out[v - 1] = pos
        return Permutation._trusted(tuple(out))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self) -> str:
        return " ".join(str(v) for v in self.entries)


def _check_width(n: int) -> int:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise WidthTooSmall(f"width must be a positive integer, got {n!r}")
    return n


def check_seed(s: int) -> int:
    """Validates a seed: a non-negative integer of any size."""
    if isinstance(s, bool) or not isinstance(s, int) or s < 0:
        raise InvalidSeed(f"seed must be a non-negative integer, got {s!r}")
    return s


# ---------- árvore de Fenwick (larguras grandes)


class _Fenwick:
    """Counts of still-available values 1..n; finds the k-th available one."""

    __slots__ = ("n", "tree", "top")

    def __init__(self, n: int):
        self.n = n
        self.tree = [0] * (n + 1)
        for i in range(1, n + 1):
            self.tree[i] += 1
            j = i + (i & -i)
            if j <= n:
                self.tree[j] += self.tree[i]
        self.top = 1 << n.bit_length()

    def remove(self, v: int) -> None:
        while v <= self.n:
            self.tree[v] -= 1
            v += v & -v

    def count_below(self, v: int) -> int:
        """Available values strictly smaller than v."""
        total = 0
        v -= 1
        while v > 0:
            total += self.tree[v]
            v -= v & -v
        return total

    def kth(self, k: int) -> int:
        """Value with exactly k available values below it (0-based k)."""
        pos = 0
        bit = self.top
        while bit:
            nxt = pos + bit
            if nxt <= self.n and self.tree[nxt] <= k:
                k -= self.tree[nxt]
                pos = nxt
            bit >>= 1
        return pos + 1


# ---------- API


def integer_from_code(code: FactoradicCode) -> int:
    """
    Returns sum(digits[i] * i!), always below width!.
    """
    total = 0
    fact = 1
    for i, d in enumerate(code.digits):
        total += d * fact
        fact *= i + 1
    return total


def code_from_integer(s: int, width: int) -> FactoradicCode:
    """
    Standard factoradic of s at the given width (not the transposition-order
    code: that one comes from ``unranker.unrank``).
    """
    check_seed(s)
    _check_width(width)
    digits = []
    q = s
    for i in range(width):
        q, d = divmod(q, i + 1)
        digits.append(d)
    if q:
        raise WidthTooSmall(f"seed {s} does not fit width {width} (needs s <= {width}!-1)")
    return FactoradicCode._trusted(tuple(digits))


def decode_permutation(code: FactoradicCode, *, fenwick: bool | None = None) -> Permutation:
    """
    Removal procedure: starting from (1, 2, ..., n), repeatedly take the
    element at 0-based index digits[k] for k = n-1 down to 0.
    """
    n = code.width
    digits = code.digits
    if fenwick is None:
        fenwick = n >= FENWICK_MIN_WIDTH
    if fenwick:
        tree = _Fenwick(n)
        out = []
        for k in range(n - 1, -1, -1):
            v = tree.kth(digits[k])
            tree.remove(v)
            out.append(v)
        return Permutation._trusted(tuple(out))
    remaining = list(range(1, n + 1))
    return Permutation._trusted(tuple(remaining.pop(digits[k]) for k in range(n - 1, -1, -1)))


def encode_permutation(perm: Permutation | Sequence[int], *, fenwick: bool | None = None) -> FactoradicCode:
    """
    Lehmer code of a permutation, the exact inverse of ``decode_permutation``.
    """
    if not isinstance(perm, Permutation):
        perm = Permutation(tuple(perm))
    entries = perm.entries
    n = len(entries)
    if fenwick is None:
        fenwick = n >= FENWICK_MIN_WIDTH
    digits = [0] * n
    if fenwick:
        tree = _Fenwick(n)
        for step, v in enumerate(entries):
            digits[n - 1 - step] = tree.count_below(v)
            tree.remove(v)
    else:
        remaining = list(range(1, n + 1))
        for step, v in enumerate(entries):
            idx = remaining.index(v)
            del remaining[idx]
            digits[n - 1 - step] = idx
    return FactoradicCode._trusted(tuple(digits))


# ---------- erros


class InvalidCode(ValueError):
    """
    Invalid factoradic code: every digit at position i must satisfy 0 <= digit <= i
    """

    def __init__(self, message: str | None = None):
        super().__init__(message or self.__doc__)


class InvalidPermutation(ValueError):
    """
    Invalid permutation: entries must be 1..n, each exactly once
    """

    def __init__(self, message: str | None = None):
        super().__init__(message or self.__doc__)


class WidthTooSmall(ValueError):
    """
    The width is too small for the requested value
    """

    def __init__(self, message: str | None = None):
        super().__init__(message or self.__doc__)


class InvalidSeed(ValueError):
    """
    Seeds are non-negative integers
    """

    def __init__(self, message: str | None = None):
        super().__init__(message or self.__doc__)

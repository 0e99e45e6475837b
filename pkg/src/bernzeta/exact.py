"""Exact rational Bernoulli numbers and polynomials from forward differences.

Everything in this module is integer or Fraction arithmetic; no floats.
The three explicit formulas (Worpitzky-weight, 1/(n(n+1))-weight and
1/n^2-weight) all consume the same memoized difference table, and the
generating-function recurrence provides an independent oracle.

Convention: B1 = -1/2 throughout ("first" Bernoulli numbers).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

__all__ = [
    "B0",
    "DifferenceTable",
    "PolyDifferenceValue",
    "binomial",
    "forward_difference",
    "stirling2",
    "bernoulli_worpitzky",
    "bernoulli_formula_a",
    "bernoulli_formula_b",
    "bernoulli_recurrence_oracle",
    "poly_difference",
    "bernoulli_poly_at",
    "bernoulli_poly",
    "bernoulli_poly_oracle",
]

B0 = Fraction(1)


def binomial(n: int, j: int) -> int:
    """C(n, j); zero when j > n."""
    if n < 0 or j < 0:
        raise ValueError("binomial requires nonnegative arguments")
    return comb(n, j)


@lru_cache(maxsize=8)
def _power_row(k: int) -> tuple:
    """j**k for j = 0..k, shared across all difference computations of one k."""
    return tuple(j ** k for j in range(k + 1))


class DifferenceTable:
    """Memoized forward differences D(n, k) = sum_{j=1}^{n} (-1)^j C(n,j) j^k.

    Values vanish identically for n > k. The cache is lock-protected so the
    table can be shared between threads; entries are pure functions of
    (n, k) so any interleaving produces identical results.
    """

    def __init__(self):
        self._entries: dict[tuple[int, int], int] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._entries)

    def value(self, n: int, k: int) -> int:
        if n < 1 or k < 1:
            raise ValueError("forward differences are defined for n >= 1, k >= 1")
        key = (n, k)
        with self._lock:
            got = self._entries.get(key)
        if got is not None:
            return got
        if n > k:
            v = 0
        else:
            powers = _power_row(k)
            c = 1  # running C(n, j)
            v = 0
            for j in range(1, n + 1):
                c = c * (n - j + 1) // j
                t = c * powers[j]
                v = v - t if j & 1 else v + t
        with self._lock:
            self._entries[key] = v
        return v


_DEFAULT_TABLE = DifferenceTable()


def forward_difference(n: int, k: int, table: DifferenceTable | None = None) -> int:
    """Delta_n(k) = sum_{j=1}^{n} (-1)^j C(n,j) j^k, exactly."""
    return (table or _DEFAULT_TABLE).value(n, k)


def stirling2(k: int, n: int) -> int:
    """Stirling number of the second kind S(k, n) by the triangular recurrence.

    Satisfies Delta_n(k) = (-1)^n n! S(k, n).
    """
    if k < 1 or n < 1:
        raise ValueError("stirling2 requires k >= 1, n >= 1")
    if n > k:
        return 0
    # row[m] = S(i, m) for the current i
    row = [0] * (n + 1)
    row[min(1, n)] = 1  # S(1,1) = 1
    for i in range(2, k + 1):
        hi = min(i, n)
        for m in range(hi, 0, -1):
            above = row[m - 1] if m - 1 >= 0 else 0
            row[m] = m * row[m] + above
    return row[n]


def bernoulli_worpitzky(k: int, table: DifferenceTable | None = None) -> Fraction:
    """B_k = sum_{n=1}^{k} Delta_n(k) / (n+1), for k >= 1."""
    if k < 1:
        raise ValueError("the Worpitzky-weight formula is stated for k >= 1; B0 is the constant B0")
    t = table or _DEFAULT_TABLE
    return sum((Fraction(t.value(n, k), n + 1) for n in range(1, k + 1)), Fraction(0))


def bernoulli_formula_a(k: int, table: DifferenceTable | None = None) -> Fraction:
    """B_k = (-1)^(k+1) sum_{n=1}^{k} Delta_n(k) / (n(n+1)), for k >= 1."""
    if k < 1:
        raise ValueError("formula a is stated for k >= 1; B0 is the constant B0")
    t = table or _DEFAULT_TABLE
    s = sum((Fraction(t.value(n, k), n * (n + 1)) for n in range(1, k + 1)), Fraction(0))
    return s if k % 2 else -s


def bernoulli_formula_b(k: int, table: DifferenceTable | None = None) -> Fraction:
    """B_k = (-1)^(k+1) sum_{n=1}^{k+1} Delta_n(k+1) / n^2, for k >= 0."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    t = table or _DEFAULT_TABLE
    s = sum((Fraction(t.value(n, k + 1), n * n) for n in range(1, k + 2)), Fraction(0))
    return s if k % 2 else -s


_BERN_CACHE: list[Fraction] = [Fraction(1)]
_BERN_LOCK = threading.Lock()


def bernoulli_recurrence_oracle(k: int) -> Fraction:
    """B_k from sum_{j=0}^{k} C(k+1, j) B_j = 0 with B_0 = 1 (so B1 = -1/2).

    Independent of every forward-difference formula; used as the oracle.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    with _BERN_LOCK:
        while len(_BERN_CACHE) <= k:
            m = len(_BERN_CACHE)
            acc = Fraction(0)
            for j in range(m):
                acc += comb(m + 1, j) * _BERN_CACHE[j]
            _BERN_CACHE.append(-acc / (m + 1))
        return _BERN_CACHE[k]


@dataclass(frozen=True)
class PolyDifferenceValue:
    """One polynomial forward difference: sum_{j=1}^{n} (-1)^j C(n,j) j (j+x-1)^(k-1)."""

    value: Fraction
    n: int
    k: int
    x: Fraction

    @classmethod
    def compute(cls, n: int, k: int, x: Fraction) -> "PolyDifferenceValue":
        if n < 1 or k < 1:
            raise ValueError("poly differences are defined for n >= 1, k >= 1")
        x = Fraction(x)
        acc = Fraction(0)
        c = 1
        for j in range(1, n + 1):
            c = c * (n - j + 1) // j
            base = j + x - 1
            term = c * j * (base ** (k - 1))  # base**0 == 1 covers k == 1
            acc = acc - term if j & 1 else acc + term
        return cls(acc, n, k, x)


def poly_difference(n: int, k: int, x: Fraction) -> Fraction:
    """Delta_{n,x}(k), exactly; reduces to forward_difference(n, k) at x = 1."""
    return PolyDifferenceValue.compute(n, k, x).value


def bernoulli_poly_at(k: int, x: Fraction) -> Fraction:
    """B_k(1-x) = (-1)^(k+1) sum_{n=1}^{k} (1/(n(n+1)) + (x-1)/n^2) Delta_{n,x}(k).

    The identity is a finite rational expression, so any rational x is
    accepted even though the series that motivates it restricts x to (0, 1].
    """
    if k < 1:
        raise ValueError("the explicit polynomial formula is stated for k >= 1")
    x = Fraction(x)
    acc = Fraction(0)
    for n in range(1, k + 1):
        w = Fraction(1, n * (n + 1)) + Fraction(x - 1, n * n)
        acc += w * poly_difference(n, k, x)
    return acc if k % 2 else -acc


def bernoulli_poly(k: int, y: Fraction) -> Fraction:
    """B_k(y) via the 1-x wrapper around bernoulli_poly_at."""
    return bernoulli_poly_at(k, 1 - Fraction(y))


def bernoulli_poly_oracle(k: int, y: Fraction) -> Fraction:
    """B_k(y) = sum_j C(k,j) B_j y^(k-j) with B_j from the recurrence oracle."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    y = Fraction(y)
    acc = Fraction(0)
    for j in range(k + 1):
        acc += comb(k, j) * bernoulli_recurrence_oracle(j) * (y ** (k - j))
    return acc

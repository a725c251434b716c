"""Bernoulli numbers and polynomials, exact.

Convention: B_1 = -1/2, and B_k means B_k(0) throughout. Numbers come from
the defining recurrence sum_{j=0}^{k} C(k+1, j) B_j = 0 (k >= 1); the
polynomials from B_k(t) = sum_j C(k, j) B_j t^(k-j). Both caches only ever
grow; a lock keeps concurrent fills single-writer.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb

from .algebra import Poly

__all__ = [
    "bernoulli_number",
    "bernoulli_poly",
    "bernoulli_reflection_check",
]

_numbers: list[Fraction] = [Fraction(1)]
_polys: list[Poly] = [Poly.one()]
_lock = threading.Lock()


def _ensure(k: int) -> None:
    if k < 0:
        raise ValueError(f"Bernoulli index must be >= 0, got {k}")
    with _lock:
        while len(_numbers) <= k:
            m = len(_numbers)
            s = sum((comb(m + 1, j) * _numbers[j] for j in range(m)), Fraction(0))
            _numbers.append(-s / (m + 1))
        while len(_polys) <= k:
            m = len(_polys)
            # ascending: coefficient of t^i is C(m, m-i) * B_{m-i}
            _polys.append(Poly(tuple(comb(m, m - i) * _numbers[m - i] for i in range(m + 1))))


def bernoulli_number(k: int) -> Fraction:
    """B_k with B_1 = -1/2."""
    _ensure(k)
    return _numbers[k]


def bernoulli_poly(k: int) -> Poly:
    """B_k(t) as an exact univariate polynomial."""
    _ensure(k)
    return _polys[k]


def bernoulli_reflection_check(k: int) -> bool:
    """Exact check of B_k(1-t) == (-1)^k B_k(t)."""
    b = bernoulli_poly(k)
    reflected = b.compose_affine(1, -1)
    return reflected == (b if k % 2 == 0 else -b)

"""Coefficient engine for the asymptotic expansions of exp(p*psi(x+t)).

The digamma function admits an asymptotic expansion in log form,

    psi(x+t) ~ log( sum_{n>=0} S_n(t) x^(1-n) ),

where the S_n are rational polynomials produced by the recurrence

    S_0 = 1,   n S_n(t) = sum_{k=1}^{n} (-1)^(k+1) B_k(t) S_{n-k}(t),

with B_k the Bernoulli polynomials. Exponentiating with a power p gives

    exp(p*psi(x+t)) ~ x^p sum_{n>=0} G_n(p,t) x^(-n),

and this module computes the bivariate coefficients G_n(p,t) exactly by
three independent constructions that must agree term for term:

* ``g_via_bernoulli`` (canonical): the direct recurrence
  n G_n = p sum_{k=1}^{n} (-1)^(k+1) B_k(t) G_{n-k}.
* ``g_via_power_transform``: raise the S series to the power p using the
  classical recurrence for g(x)^p given the series of g, with p symbolic.
* ``g_via_compositions``: the closed form
  (-1)^n G_n = sum_{r=1}^{n} ((-p)^r / r!) *
               sum_{k_1+...+k_r = n, k_i>=1} B_{k_1}(t)...B_{k_r}(t)/(k_1...k_r),
  summed over all 2^(n-1) ordered compositions of n. Exponential cost, so
  the order is capped.

Specialized fast paths (rational p or rational t) keep the theorem checks
cheap; they run the canonical recurrence in a single variable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Optional, Sequence, Union

from .algebra import BiPoly, Expansion, Poly
from .bernoulli import bernoulli_poly

__all__ = [
    "SSeries",
    "GSeries",
    "CompositionLimitError",
    "COMPOSITION_ORDER_CAP",
    "s_coeffs",
    "power_transform",
    "g_via_power_transform",
    "g_via_bernoulli",
    "g_via_compositions",
    "g_series_at_p",
    "g_series_at_t",
    "binomial_in_p",
    "shift_compose",
    "specialize",
    "composition_buckets",
    "gseries_csv",
]

COMPOSITION_ORDER_CAP = 16

ROUTE_POWER = "power-transform"
ROUTE_BERNOULLI = "bernoulli-recurrence"
ROUTE_COMPOSITIONS = "explicit-compositions"


class CompositionLimitError(ValueError):
    """Raised when the explicit-composition route is asked to exceed its cap."""


@dataclass(frozen=True)
class SSeries:
    """S_0..S_N as exact univariate polynomials in t."""

    coeffs: tuple[Poly, ...]

    def __getitem__(self, n: int) -> Poly:
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class GSeries:
    """G_0..G_N as exact bivariate polynomials in (p, t), plus the route used."""

    coeffs: tuple[BiPoly, ...]
    route: str

    def __getitem__(self, n: int) -> BiPoly:
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def to_json_dict(self) -> dict:
        return {
            "N": self.order,
            "route": self.route,
            "coeffs": [c.to_json_dict() for c in self.coeffs],
        }


@lru_cache(maxsize=None)
def _s_polys(n_max: int) -> tuple[Poly, ...]:
    out: list[Poly] = [Poly.one()]
    for n in range(1, n_max + 1):
        acc = Poly.zero()
        for k in range(1, n + 1):
            term = bernoulli_poly(k) * out[n - k]
            acc = acc + term if k % 2 == 1 else acc - term
        out.append(acc * Fraction(1, n))
    return tuple(out)


def s_coeffs(n_max: int) -> SSeries:
    """S_0..S_{n_max} by the log-series recurrence."""
    if n_max < 0:
        raise ValueError("series order must be >= 0")
    return SSeries(_s_polys(n_max))


def _is_one(c) -> bool:
    if isinstance(c, BiPoly):
        return c == BiPoly.one()
    if isinstance(c, Poly):
        return c == Poly.one()
    return Fraction(c) == 1


def _to_bipoly(c) -> BiPoly:
    if isinstance(c, BiPoly):
        return c
    if isinstance(c, Poly):
        return BiPoly.from_poly_in_t(c)
    return BiPoly.constant(Fraction(c))


def _power_coeffs_symbolic(a: Sequence, n_max: int) -> list[BiPoly]:
    """b_n for (sum a_k x^-k)^p with p left symbolic; a_0 must be 1."""
    coeffs = [_to_bipoly(c) for c in a[: n_max + 1]]
    b: list[BiPoly] = [BiPoly.one()]
    p = BiPoly.var_p()
    for n in range(1, n_max + 1):
        acc = BiPoly.zero()
        for k in range(1, n + 1):
            # k(1+p) - n, a degree-1 polynomial in p
            mult = BiPoly({(0, 0): Fraction(k - n), (1, 0): Fraction(k)})
            acc = acc + mult * coeffs[k] * b[n - k]
        b.append(acc * Fraction(1, n))
    return b


def _power_coeffs_numeric(a: Sequence, p: Fraction, n_max: int) -> list:
    coeffs = list(a[: n_max + 1])
    b = [type(coeffs[0]).one() if isinstance(coeffs[0], (Poly, BiPoly)) else Fraction(1)]
    for n in range(1, n_max + 1):
        acc = None
        for k in range(1, n + 1):
            mult = Fraction(k) * (1 + p) - n
            term = coeffs[k] * b[n - k] * mult
            acc = term if acc is None else acc + term
        b.append(acc * Fraction(1, n))
    return b


def power_transform(a: Expansion, p: Optional[Fraction] = None) -> Expansion:
    """Raise a series with leading coefficient 1 to the power p.

    b_0 = 1 and n b_n = sum_{k=1}^{n} (k(1+p) - n) a_k b_{n-k}, exactly.
    ``p=None`` keeps the exponent symbolic; the coefficients then live in
    the bivariate ring and the base exponent becomes p * base.
    """
    if not a.coeffs or not _is_one(a.coeffs[0]):
        raise ValueError("power transform requires leading coefficient exactly 1")
    n_max = a.order
    if p is None:
        b = _power_coeffs_symbolic(a.coeffs, n_max)
        base = BiPoly.var_p() * Fraction(a.base_exponent)
        return Expansion(base_exponent=base, coeffs=tuple(b))
    p = Fraction(p)
    b = _power_coeffs_numeric(a.coeffs, p, n_max)
    return Expansion(base_exponent=Fraction(a.base_exponent) * p, coeffs=tuple(b))


@lru_cache(maxsize=None)
def _g_power(n_max: int) -> tuple[BiPoly, ...]:
    s = _s_polys(n_max)
    return tuple(_power_coeffs_symbolic(s, n_max))


def g_via_power_transform(n_max: int) -> GSeries:
    """G_n by raising the S series to a symbolic power p."""
    return GSeries(_g_power(n_max), route=ROUTE_POWER)


@lru_cache(maxsize=None)
def _g_bernoulli(n_max: int) -> tuple[BiPoly, ...]:
    g: list[BiPoly] = [BiPoly.one()]
    p = BiPoly.var_p()
    for n in range(1, n_max + 1):
        acc = BiPoly.zero()
        for k in range(1, n + 1):
            term = _to_bipoly(bernoulli_poly(k)) * g[n - k]
            acc = acc + term if k % 2 == 1 else acc - term
        g.append(p * acc * Fraction(1, n))
    return tuple(g)


def g_via_bernoulli(n_max: int) -> GSeries:
    """Canonical route: the Bernoulli-polynomial recurrence with p symbolic."""
    return GSeries(_g_bernoulli(n_max), route=ROUTE_BERNOULLI)


def composition_buckets(n: int) -> dict[int, Poly]:
    """For each part count r, sum B_{k_1}(t)...B_{k_r}(t)/(k_1...k_r) over
    ordered compositions k_1+...+k_r = n. Recursive descent over the first
    part; 2^(n-1) compositions in total."""
    buckets: dict[int, Poly] = {}

    def descend(remaining: int, parts: int, prod: Poly) -> None:
        if remaining == 0:
            buckets[parts] = buckets.get(parts, Poly.zero()) + prod
            return
        for k in range(1, remaining + 1):
            descend(remaining - k, parts + 1, prod * bernoulli_poly(k) * Fraction(1, k))

    descend(n, 0, Poly.one())
    return buckets


@lru_cache(maxsize=None)
def _g_compositions(n_max: int) -> tuple[BiPoly, ...]:
    out: list[BiPoly] = [BiPoly.one()]
    for n in range(1, n_max + 1):
        terms: dict[tuple[int, int], Fraction] = {}
        for r, poly in composition_buckets(n).items():
            scale = Fraction((-1) ** (n + r), factorial(r))
            for j, c in enumerate(poly.coeffs):
                if c:
                    key = (r, j)
                    terms[key] = terms.get(key, Fraction(0)) + scale * c
        out.append(BiPoly(terms))
    return tuple(out)


def g_via_compositions(n_max: int, limit: int = COMPOSITION_ORDER_CAP) -> GSeries:
    """Explicit route: sum over ordered compositions. Cost 2^(n-1) per order,
    so orders beyond ``limit`` are refused."""
    if n_max > limit:
        raise CompositionLimitError(
            f"composition route capped at order {limit}, got {n_max}"
        )
    return GSeries(_g_compositions(n_max), route=ROUTE_COMPOSITIONS)


@lru_cache(maxsize=None)
def g_series_at_p(p0: Fraction, n_max: int) -> tuple[Poly, ...]:
    """G_0..G_N at a fixed rational power p0, as polynomials in t."""
    p0 = Fraction(p0)
    g: list[Poly] = [Poly.one()]
    for n in range(1, n_max + 1):
        acc = Poly.zero()
        for k in range(1, n + 1):
            term = bernoulli_poly(k) * g[n - k]
            acc = acc + term if k % 2 == 1 else acc - term
        g.append(acc * Fraction(p0, n))
    return tuple(g)


@lru_cache(maxsize=None)
def g_series_at_t(t0: Fraction, n_max: int) -> tuple[Poly, ...]:
    """G_0..G_N at a fixed rational shift t0, as polynomials in p."""
    t0 = Fraction(t0)
    b_at = [bernoulli_poly(k).eval(t0) for k in range(n_max + 1)]
    g: list[Poly] = [Poly.one()]
    p_var = Poly.variable()
    for n in range(1, n_max + 1):
        acc = Poly.zero()
        for k in range(1, n + 1):
            term = b_at[k] * g[n - k]
            acc = acc + term if k % 2 == 1 else acc - term
        g.append(p_var * acc * Fraction(1, n))
    return tuple(g)


def binomial_in_p(n: int, k: int) -> Poly:
    """C(p-n+k, k) = (p-n+k)(p-n+k-1)...(p-n+1) / k! as a polynomial in p."""
    acc = Poly.one()
    for j in range(1, k + 1):
        acc = acc * Poly((Fraction(j - n), Fraction(1)))
    return acc * Fraction(1, factorial(k))


def shift_compose(g: GSeries, n: int, s, t: Optional[Fraction] = None) -> BiPoly:
    """The shift composition sum_{k=0}^{n} C(p-n+k, k) G_{n-k}(p, s) t^k.

    With rational ``t`` the result is a polynomial in p alone; ``t=None``
    keeps t symbolic. Equals G_n(p, s+t) when the shift identity holds.
    """
    if n > g.order:
        raise ValueError(f"series only reaches order {g.order}, need {n}")
    s = Fraction(s)
    acc = BiPoly.zero()
    for k in range(n + 1):
        base = BiPoly.from_poly_in_p(binomial_in_p(n, k)) * g[n - k].eval_t(s)
        if t is None:
            acc = acc + base * (BiPoly.var_t() ** k)
        else:
            acc = acc + base * (Fraction(t) ** k)
    return acc


def specialize(
    g: GSeries, p0: Optional[Fraction] = None, t0: Optional[Fraction] = None
) -> Expansion:
    """Substitute rational values for p and/or t across a whole series.

    Fully specialized coefficients come back as plain rationals; partial
    specialization keeps bivariate values with the substituted variable at
    degree zero.
    """
    coeffs: list = []
    for c in g.coeffs:
        if p0 is not None and t0 is not None:
            coeffs.append(c.eval(Fraction(p0), Fraction(t0)))
            continue
        v = c
        if p0 is not None:
            v = v.eval_p(Fraction(p0))
        if t0 is not None:
            v = v.eval_t(Fraction(t0))
        coeffs.append(v)
    base: Union[Fraction, BiPoly] = Fraction(p0) if p0 is not None else BiPoly.var_p()
    return Expansion(base_exponent=base, coeffs=tuple(coeffs))


def gseries_csv(g: GSeries) -> str:
    """CSV rows (n, p_pow, t_pow, num, den), one per nonzero term."""
    lines = ["n,p_pow,t_pow,num,den"]
    for n, c in enumerate(g.coeffs):
        for i, j, q in c.sorted_terms():
            lines.append(f"{n},{i},{j},{q.numerator},{q.denominator}")
    return "\n".join(lines) + "\n"

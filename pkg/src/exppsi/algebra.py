"""Exact rational polynomial arithmetic in one and two variables.

All coefficients are ``fractions.Fraction``, so every operation in this
module is exact. Two representations are used, matching how the series
coefficients actually behave:

* ``Poly`` is a dense univariate polynomial, a tuple of coefficients by
  ascending power. Bernoulli polynomials and series specialized at a
  numeric parameter live here.
* ``BiPoly`` is a sparse bivariate polynomial in the pair ``(p, t)``,
  stored as a map from exponent pairs to nonzero coefficients. The
  symbolic expansion coefficients are sparse once their degrees collapse,
  so a map beats a dense grid.

Values are immutable and operations are pure. The zero polynomial is the
empty tuple / empty map and reports degree ``None`` rather than a sentinel
integer.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Union

__all__ = [
    "Rational",
    "Poly",
    "BiPoly",
    "Expansion",
    "poly_mul",
    "poly_eval_t",
    "degree_in",
    "parse_rational",
    "format_rational",
    "json_canonical",
]

Rational = Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse 'a/b' or integer text into a Fraction. Floats are rejected."""
    if not _RATIONAL_RE.match(text.strip()):
        raise ValueError(f"not a rational literal (expected 'a/b' or integer): {text!r}")
    return Fraction(text.strip())


def format_rational(q: Fraction) -> str:
    return str(q)


def json_canonical(obj) -> str:
    """Canonical JSON text: sorted keys, no whitespace. Byte-deterministic."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _coeff_text(c: Fraction, mono: str) -> tuple[bool, str]:
    """Return (negative, body) for one rendered term."""
    a = abs(c)
    if not mono:
        body = str(a)
    elif a == 1:
        body = mono
    else:
        body = f"{a}*{mono}"
    return c < 0, body


def _join_terms(parts: list[tuple[bool, str]]) -> str:
    if not parts:
        return "0"
    out: list[str] = []
    for i, (neg, body) in enumerate(parts):
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(out)


@dataclass(frozen=True)
class Poly:
    """Dense univariate polynomial with Fraction coefficients, ascending powers."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        cs = tuple(Fraction(c) for c in self.coeffs)
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def zero(cls) -> "Poly":
        return cls(())

    @classmethod
    def one(cls) -> "Poly":
        return cls((Fraction(1),))

    @classmethod
    def constant(cls, q) -> "Poly":
        return cls((Fraction(q),))

    @classmethod
    def variable(cls) -> "Poly":
        return cls((Fraction(0), Fraction(1)))

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(tuple(self[k] + other[k] for k in range(n)))

    def __sub__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(tuple(self[k] - other[k] for k in range(n)))

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Poly):
            if self.is_zero or other.is_zero:
                return Poly.zero()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return Poly(tuple(out))
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Poly(tuple(c * q for c in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        acc = Poly.one()
        for _ in range(n):
            acc = acc * self
        return acc

    def eval(self, x) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_affine(self, a, b) -> "Poly":
        """Exact substitution X := a + b*X (Horner in the affine argument)."""
        arg = Poly((Fraction(a), Fraction(b)))
        acc = Poly.zero()
        for c in reversed(self.coeffs):
            acc = acc * arg + Poly.constant(c)
        return acc

    def derivative(self) -> "Poly":
        return Poly(tuple(k * c for k, c in enumerate(self.coeffs) if k >= 1))

    def to_text(self, var: str = "t") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            parts.append(_coeff_text(c, mono))
        return _join_terms(parts)


class BiPoly:
    """Sparse bivariate polynomial in (p, t): map (p_pow, t_pow) -> Fraction."""

    __slots__ = ("terms",)
    __hash__ = None  # mutable mapping inside; never hash

    def __init__(self, terms: Mapping[tuple[int, int], Fraction] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        store: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in items:
            q = Fraction(c)
            if q != 0:
                store[(int(i), int(j))] = store.get((int(i), int(j)), Fraction(0)) + q
        self.terms = {k: v for k, v in store.items() if v != 0}

    @classmethod
    def zero(cls) -> "BiPoly":
        return cls()

    @classmethod
    def one(cls) -> "BiPoly":
        return cls({(0, 0): Fraction(1)})

    @classmethod
    def constant(cls, q) -> "BiPoly":
        return cls({(0, 0): Fraction(q)})

    @classmethod
    def var_p(cls) -> "BiPoly":
        return cls({(1, 0): Fraction(1)})

    @classmethod
    def var_t(cls) -> "BiPoly":
        return cls({(0, 1): Fraction(1)})

    @classmethod
    def from_poly_in_t(cls, poly: Poly) -> "BiPoly":
        return cls({(0, j): c for j, c in enumerate(poly.coeffs)})

    @classmethod
    def from_poly_in_p(cls, poly: Poly) -> "BiPoly":
        return cls({(i, 0): c for i, c in enumerate(poly.coeffs)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, BiPoly):
            return self.terms == other.terms
        return NotImplemented

    def __repr__(self) -> str:
        return f"BiPoly({self.to_text()})"

    def __add__(self, other: "BiPoly") -> "BiPoly":
        if not isinstance(other, BiPoly):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return BiPoly(out)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        if not isinstance(other, BiPoly):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) - c
        return BiPoly(out)

    def __neg__(self) -> "BiPoly":
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, BiPoly):
            out: dict[tuple[int, int], Fraction] = {}
            for (i1, j1), a in self.terms.items():
                for (i2, j2), b in other.terms.items():
                    key = (i1 + i2, j1 + j2)
                    out[key] = out.get(key, Fraction(0)) + a * b
            return BiPoly(out)
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return BiPoly({k: c * q for k, c in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        acc = BiPoly.one()
        for _ in range(n):
            acc = acc * self
        return acc

    def degree_in(self, var: str) -> int | None:
        if not self.terms:
            return None
        idx = {"p": 0, "t": 1}[var]
        return max(k[idx] for k in self.terms)

    def coeff(self, p_pow: int, t_pow: int) -> Fraction:
        return self.terms.get((p_pow, t_pow), Fraction(0))

    def coeff_of_t_power(self, j: int) -> Poly:
        """The coefficient of t^j, as a univariate polynomial in p."""
        if not self.terms:
            return Poly.zero()
        top = max(i for (i, _) in self.terms)
        return Poly(tuple(self.terms.get((i, j), Fraction(0)) for i in range(top + 1)))

    def eval_t(self, t0) -> "BiPoly":
        """Substitute t := t0 exactly; the result has t-degree <= 0."""
        t0 = Fraction(t0)
        out: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in self.terms.items():
            out[(i, 0)] = out.get((i, 0), Fraction(0)) + c * t0**j
        return BiPoly(out)

    def eval_p(self, p0) -> "BiPoly":
        p0 = Fraction(p0)
        out: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in self.terms.items():
            out[(0, j)] = out.get((0, j), Fraction(0)) + c * p0**i
        return BiPoly(out)

    def eval(self, p0, t0) -> Fraction:
        p0, t0 = Fraction(p0), Fraction(t0)
        return sum((c * p0**i * t0**j for (i, j), c in self.terms.items()), Fraction(0))

    def as_poly_in_t(self) -> Poly:
        if any(i != 0 for (i, _) in self.terms):
            raise ValueError("polynomial still depends on p")
        if not self.terms:
            return Poly.zero()
        top = max(j for (_, j) in self.terms)
        return Poly(tuple(self.terms.get((0, j), Fraction(0)) for j in range(top + 1)))

    def as_poly_in_p(self) -> Poly:
        if any(j != 0 for (_, j) in self.terms):
            raise ValueError("polynomial still depends on t")
        if not self.terms:
            return Poly.zero()
        top = max(i for (i, _) in self.terms)
        return Poly(tuple(self.terms.get((i, 0), Fraction(0)) for i in range(top + 1)))

    def shift_t(self, s) -> "BiPoly":
        """Exact substitution t := t + s."""
        s = Fraction(s)
        if s == 0 or self.is_zero:
            return self
        out = BiPoly.zero()
        top = max(i for (i, _) in self.terms)
        for i in range(top + 1):
            slice_t = Poly(
                tuple(
                    self.terms.get((i, j), Fraction(0))
                    for j in range(max((jj for (ii, jj) in self.terms if ii == i), default=-1) + 1)
                )
            )
            if slice_t.is_zero:
                continue
            shifted = slice_t.compose_affine(s, 1)
            out = out + BiPoly({(i, j): c for j, c in enumerate(shifted.coeffs)})
        return out

    def derivative_t(self) -> "BiPoly":
        return BiPoly({(i, j - 1): j * c for (i, j), c in self.terms.items() if j >= 1})

    def sorted_terms(self) -> list[tuple[int, int, Fraction]]:
        return [(i, j, self.terms[(i, j)]) for (i, j) in sorted(self.terms)]

    def to_json_dict(self) -> dict:
        return {
            "var_order": ["p", "t"],
            "terms": [
                {"p": i, "t": j, "num": str(c.numerator), "den": str(c.denominator)}
                for i, j, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "BiPoly":
        if d.get("var_order") != ["p", "t"]:
            raise ValueError("unexpected var_order in polynomial JSON")
        terms = {}
        for item in d["terms"]:
            c = Fraction(int(item["num"]), int(item["den"]))
            terms[(int(item["p"]), int(item["t"]))] = c
        return cls(terms)

    def to_text(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, j, c in self.sorted_terms():
            mono_bits = []
            if i:
                mono_bits.append("p" if i == 1 else f"p^{i}")
            if j:
                mono_bits.append("t" if j == 1 else f"t^{j}")
            parts.append(_coeff_text(c, "*".join(mono_bits)))
        return _join_terms(parts)


Coefficient = Union[Fraction, Poly, BiPoly]


@dataclass(frozen=True)
class Expansion:
    """A truncated series x^base * sum_n coeffs[n] x^(-n).

    ``base_exponent`` is rational except for the symbolic-power case, where
    it is a BiPoly in p (the exponent p*b cannot be a number).
    """

    base_exponent: Union[Fraction, BiPoly]
    coeffs: tuple[Coefficient, ...] = field(default_factory=tuple)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1


def poly_mul(a: BiPoly, b: BiPoly) -> BiPoly:
    """Exact product of two bivariate polynomials."""
    return a * b


def poly_eval_t(a: BiPoly, t0) -> BiPoly:
    """Exact substitution t := t0, leaving a polynomial in p only."""
    return a.eval_t(t0)


def degree_in(a: BiPoly, var: str) -> int | None:
    """Degree in 'p' or 't'; None for the zero polynomial."""
    return a.degree_in(var)

"""Unit tests for the exact polynomial layer."""

import json
from fractions import Fraction

import pytest

from exppsi.algebra import (
    BiPoly,
    Poly,
    format_rational,
    json_canonical,
    parse_rational,
)

F = Fraction


class TestParseRational:
    def test_integers_and_fractions(self):
        assert parse_rational("3") == F(3)
        assert parse_rational("-7/2") == F(-7, 2)
        assert parse_rational("+4/6") == F(2, 3)

    @pytest.mark.parametrize("bad", ["1.5", "2e3", "a/b", "1/", "/2", "", "1 /2"])
    def test_rejects_non_rationals(self, bad):
        with pytest.raises(ValueError):
            parse_rational(bad)

    def test_format_round_trip(self):
        for text in ["0", "5", "-5", "7/3", "-7/3"]:
            assert format_rational(parse_rational(text)) == text


class TestPoly:
    def test_degree_of_zero_is_none(self):
        assert Poly.zero().degree is None
        assert Poly.zero().is_zero
        assert (Poly.constant(3) - Poly.constant(3)).degree is None

    def test_trailing_zeros_trimmed(self):
        assert Poly((F(1), F(0), F(0))) == Poly.one()
        assert Poly((F(0),)) == Poly.zero()

    def test_arithmetic(self):
        t = Poly.variable()
        q = t * t - t + Poly.constant(F(1, 6))
        assert q[2] == 1 and q[1] == -1 and q[0] == F(1, 6)
        assert q[17] == 0
        assert (q - q).is_zero
        assert q * Poly.zero() == Poly.zero()
        assert (t + Poly.constant(1)) ** 2 == t * t + 2 * t + Poly.one()

    def test_eval_horner(self):
        # t^2 - t + 1/6 at t = 1/2 gives -1/12
        q = Poly((F(1, 6), F(-1), F(1)))
        assert q.eval(F(1, 2)) == F(-1, 12)
        assert q.eval(0) == F(1, 6)
        assert Poly.zero().eval(F(5)) == 0

    def test_compose_affine(self):
        q = Poly((F(0), F(0), F(1)))  # t^2
        r = q.compose_affine(F(1), F(-1))  # (1 - t)^2
        assert r == Poly((F(1), F(-2), F(1)))
        assert r.eval(F(1, 3)) == F(4, 9)

    def test_derivative(self):
        q = Poly((F(5), F(3), F(0), F(2)))  # 2t^3 + 3t + 5
        assert q.derivative() == Poly((F(3), F(0), F(6)))
        assert Poly.constant(9).derivative().is_zero

    def test_scalar_multiplication(self):
        t = Poly.variable()
        assert (t * F(1, 2))[1] == F(1, 2)
        assert (t * 3)[1] == 3

    def test_to_text(self):
        assert Poly.zero().to_text() == "0"
        assert Poly.one().to_text() == "1"
        q = Poly((F(1, 2), F(-1), F(1)))
        assert q.to_text("t") == "t^2 - t + 1/2"


class TestBiPoly:
    def test_canonicalization_drops_zeros(self):
        b = BiPoly({(0, 0): F(0), (1, 2): F(3)})
        assert b.coeff(0, 0) == 0
        assert b.coeff(1, 2) == 3
        assert not b.is_zero
        assert (b - b).is_zero

    def test_equality_and_arithmetic(self):
        p, t = BiPoly.var_p(), BiPoly.var_t()
        left = (p + t) ** 2
        right = p * p + p * t * 2 + t * t
        assert left == right
        assert left - right == BiPoly.zero()

    def test_degree_in_each_variable(self):
        p, t = BiPoly.var_p(), BiPoly.var_t()
        b = p * p * t + t * t * t
        assert b.degree_in("p") == 2
        assert b.degree_in("t") == 3
        assert BiPoly.zero().degree_in("p") is None

    def test_partial_evaluation(self):
        p, t = BiPoly.var_p(), BiPoly.var_t()
        b = p * t + t * t
        at_t2 = b.eval_t(2)
        assert at_t2 == p * 2 + BiPoly.constant(4)
        assert b.eval(3, 2) == 10
        assert b.eval_p(0) == t * t

    def test_as_univariate_guards(self):
        p, t = BiPoly.var_p(), BiPoly.var_t()
        with pytest.raises(ValueError):
            (p * t).as_poly_in_t()
        assert (t * t - t).as_poly_in_t() == Poly((F(0), F(-1), F(1)))
        assert (p * p * 4).as_poly_in_p() == Poly((F(0), F(0), F(4)))

    def test_shift_then_evaluate_matches_evaluate_shifted(self):
        p, t = BiPoly.var_p(), BiPoly.var_t()
        b = p * p * t * t - t * 3 + p
        s = F(2, 3)
        shifted = b.shift_t(s)
        for t0 in (F(0), F(1), F(-1, 2)):
            assert shifted.eval_t(t0) == b.eval_t(s + t0)

    def test_derivative_in_shift_direction(self):
        t = BiPoly.var_t()
        b = t ** 3
        assert b.derivative_t() == t * t * 3

    def test_json_round_trip_and_sorting(self):
        p, t = BiPoly.var_p(), BiPoly.var_t()
        b = t * F(-1, 3) + p * p + p * t
        d = b.to_json_dict()
        keys = [(item["p"], item["t"]) for item in d["terms"]]
        assert keys == sorted(keys)
        assert BiPoly.from_json_dict(d) == b
        assert json.loads(json_canonical(d)) == d

    def test_json_canonical_is_compact_and_sorted(self):
        text = json_canonical({"b": 1, "a": [1, 2]})
        assert text == '{"a":[1,2],"b":1}'


class TestExpansionContainer:
    def test_order_counts_terms_after_leading(self):
        from exppsi.algebra import Expansion

        e = Expansion(F(2), (F(1), F(0), F(1, 3)))
        assert e.order == 2
        assert e.base_exponent == 2

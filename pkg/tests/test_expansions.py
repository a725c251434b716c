"""Tests for the series constructions.

The log-series coefficients are checked against an oracle built here by
formally exponentiating the generating series with plain convolutions,
sharing no code path with the package recurrence.
"""

from fractions import Fraction
from math import factorial

import pytest

from exppsi.algebra import BiPoly, Expansion, Poly
from exppsi.bernoulli import bernoulli_poly
from exppsi.expansions import (
    COMPOSITION_ORDER_CAP,
    CompositionLimitError,
    composition_buckets,
    g_series_at_p,
    g_series_at_t,
    g_via_bernoulli,
    g_via_compositions,
    g_via_power_transform,
    gseries_csv,
    power_transform,
    s_coeffs,
    shift_compose,
    specialize,
)

F = Fraction


def exp_series_oracle(n_max: int) -> list[Poly]:
    """Formal exp of sum_{k>=1} (-1)^(k+1) B_k(t) x^(-k) / k, truncated."""
    log_part = [Poly.zero()] + [
        bernoulli_poly(k) * F((-1) ** (k + 1), k) for k in range(1, n_max + 1)
    ]

    def convolve(a: list[Poly], b: list[Poly]) -> list[Poly]:
        out = [Poly.zero()] * (n_max + 1)
        for i, ai in enumerate(a):
            if ai.is_zero:
                continue
            for j, bj in enumerate(b):
                if i + j > n_max:
                    break
                out[i + j] = out[i + j] + ai * bj
        return out

    total = [Poly.one()] + [Poly.zero()] * n_max
    power = [Poly.one()] + [Poly.zero()] * n_max
    for r in range(1, n_max + 1):
        power = convolve(power, log_part)
        inv_rfact = F(1, factorial(r))
        for i in range(n_max + 1):
            total[i] = total[i] + power[i] * inv_rfact
    return total


class TestLogSeries:
    def test_first_coefficients(self):
        s = s_coeffs(4)
        t = Poly.variable()
        assert s[0] == Poly.one()
        assert s[1] == t - Poly.constant(F(1, 2))
        assert s[2] == Poly.constant(F(1, 24))
        assert s[3] == t * F(-1, 24) + Poly.constant(F(1, 48))
        assert s[4] == t * t * F(1, 24) - t * F(1, 24) + Poly.constant(F(23, 5760))

    def test_matches_exponential_oracle(self):
        s = s_coeffs(8)
        oracle = exp_series_oracle(8)
        for n in range(9):
            assert s[n] == oracle[n], n

    def test_degree_drops_by_two_past_the_linear_term(self):
        s = s_coeffs(10)
        assert s[0].degree == 0
        assert s[1].degree == 1
        for n in range(2, 11):
            assert s[n].degree == n - 2, n

    def test_half_argument_value(self):
        s = s_coeffs(8)
        assert s[8].eval(F(1, 2)) == F(-5509121, 1393459200)

    def test_negative_order_rejected(self):
        with pytest.raises(ValueError):
            s_coeffs(-1)


class TestPowerTransform:
    def test_power_one_is_identity(self):
        a = Expansion(F(1), (F(1), F(3), F(-2), F(1, 7)))
        b = power_transform(a, F(1))
        assert b.coeffs == a.coeffs
        assert b.base_exponent == F(1)

    def test_power_zero_is_one(self):
        a = Expansion(F(1), (F(1), F(3), F(-2)))
        b = power_transform(a, F(0))
        assert b.coeffs == (F(1), F(0), F(0))

    def test_squaring_a_binomial(self):
        # (1 + 1/x)^2 = 1 + 2/x + 1/x^2
        a = Expansion(F(1), (F(1), F(1), F(0), F(0)))
        b = power_transform(a, F(2))
        assert b.coeffs == (F(1), F(2), F(1), F(0))
        assert b.base_exponent == F(2)

    def test_nested_powers_compose(self):
        a = Expansion(F(0), tuple(F(1, k + 1) for k in range(6)))
        squared_cubed = power_transform(power_transform(a, F(2)), F(3))
        sixth = power_transform(a, F(6))
        assert squared_cubed.coeffs == sixth.coeffs

    def test_rational_power_round_trip(self):
        a = Expansion(F(0), (F(1), F(-1, 3), F(2, 5), F(0), F(1, 2)))
        half = power_transform(a, F(1, 2))
        back = power_transform(half, F(2))
        assert back.coeffs == a.coeffs

    def test_requires_unit_leading_coefficient(self):
        with pytest.raises(ValueError):
            power_transform(Expansion(F(1), (F(2), F(1))), F(2))

    def test_symbolic_exponent(self):
        a = Expansion(F(1), (F(1), F(5), F(7)))
        b = power_transform(a)  # p left symbolic
        p = BiPoly.var_p()
        assert b.coeffs[0] == BiPoly.one()
        assert b.coeffs[1] == p * 5
        # b_2 = (1/2)[(2p-2)*a_1*b_1 + 2p*a_2*b_0] evaluated at p=3
        assert b.coeffs[2].eval(3, 0) == specialized_power(a, 3)[2]


def specialized_power(a: Expansion, p: int):
    return power_transform(a, F(p)).coeffs


class TestExponentialSeries:
    def test_three_routes_agree(self):
        n_max = 8
        a = g_via_power_transform(n_max)
        b = g_via_bernoulli(n_max)
        c = g_via_compositions(n_max)
        for n in range(n_max + 1):
            assert a[n] == b[n] == c[n], n

    def test_first_symbolic_coefficients(self):
        g = g_via_bernoulli(2)
        p, t = BiPoly.var_p(), BiPoly.var_t()
        assert g[0] == BiPoly.one()
        assert g[1] == p * t - p * F(1, 2)
        expected_g2 = (
            p * F(-1, 12)
            + p * t * F(1, 2)
            - p * t * t * F(1, 2)
            + p * p * F(1, 8)
            - p * p * t * F(1, 2)
            + p * p * t * t * F(1, 2)
        )
        assert g[2] == expected_g2
        assert g[2].degree_in("p") == 2

    def test_specialized_columns(self):
        g = g_via_bernoulli(6)
        assert specialize(g, 2, 0).coeffs == (
            F(1), F(-1), F(1, 3), F(0), F(-1, 90), F(-1, 90), F(-1, 567),
        )
        assert specialize(g, 4, 0).coeffs[:6] == (
            F(1), F(-2), F(5, 3), F(-2, 3), F(4, 45), F(0),
        )
        assert specialize(g, 1, 1).coeffs[:6] == (
            F(1), F(1, 2), F(1, 24), F(-1, 48), F(23, 5760), F(17, 3840),
        )

    def test_specialization_matches_single_variable_series(self):
        g = g_via_bernoulli(6)
        at_p = g_series_at_p(F(3), 6)
        at_t = g_series_at_t(F(1, 2), 6)
        for n in range(7):
            assert g[n].eval_p(3).as_poly_in_t() == at_p[n], n
            assert g[n].eval_t(F(1, 2)).as_poly_in_p() == at_t[n], n

    def test_even_power_column_terminates(self):
        # for p = 2 the coefficient at order p+1 vanishes identically in t
        at_p = g_series_at_p(F(2), 3)
        assert at_p[3].is_zero

    def test_shift_rule_matches_direct_translation(self):
        g = g_via_bernoulli(6)
        s, t0 = F(1, 3), F(1, 4)
        for n in range(7):
            assert shift_compose(g, n, s, t0) == g[n].eval_t(s + t0), n

    def test_composition_route_is_capped(self):
        with pytest.raises(CompositionLimitError):
            g_via_compositions(COMPOSITION_ORDER_CAP + 1)

    def test_composition_buckets_order_three(self):
        buckets = composition_buckets(3)
        b1, b2, b3 = bernoulli_poly(1), bernoulli_poly(2), bernoulli_poly(3)
        assert sorted(buckets) == [1, 2, 3]
        assert buckets[1] == b3 * F(1, 3)
        assert buckets[2] == b1 * b2  # (1,2) and (2,1) each weigh 1/2
        assert buckets[3] == b1 * b1 * b1

    def test_route_label_is_recorded(self):
        assert g_via_bernoulli(3).route == "bernoulli-recurrence"
        assert g_via_power_transform(3).route == "power-transform"
        assert g_via_compositions(3).route == "explicit-compositions"


class TestSerialization:
    def test_json_round_trip(self):
        g = g_via_bernoulli(4)
        doc = g.to_json_dict()
        assert doc["N"] == 4
        assert len(doc["coeffs"]) == 5
        assert BiPoly.from_json_dict(doc["coeffs"][1]) == g[1]

    def test_csv_layout(self):
        g = g_via_bernoulli(2)
        lines = gseries_csv(g).splitlines()
        assert lines[0] == "n,p_pow,t_pow,num,den"
        assert lines[1] == "0,0,0,1,1"
        # G_1 = -p/2 + p t
        assert "1,1,0,-1,2" in lines
        assert "1,1,1,1,1" in lines

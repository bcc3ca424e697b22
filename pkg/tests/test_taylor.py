import pytest
import sympy as sp

from ma_kahler.axis import CauchyDatum, axis_consistency_check, axis_profile, binomial_profile, enumerate_cauchy_data
from ma_kahler.geometry import catalog
from ma_kahler.operator import EinsteinData, is_admissible, mae_residual
from ma_kahler.parse import parse_expression
from ma_kahler.poly import Polynomial
from ma_kahler.taylor import (ObstructionError, Status, X2Series, classify,
                              classify_outcomes, edge_factor, propagate,
                              propagate_profiles, propagate_step, _g_coefficient)

from conftest import from_sympy, to_sympy


def U(text):
    return parse_expression(text, ["x1"])


def P(text):
    return parse_expression(text)


class TestEdgeFactor:
    @pytest.mark.parametrize("k", range(1, 6))
    def test_binomial(self, k):
        assert edge_factor(binomial_profile(k)) == binomial_profile(k, 2 * k - 2)

    def test_k1(self):
        assert edge_factor(U("1+x1")) == Polynomial.one(1)

    def test_constant(self):
        assert edge_factor(Polynomial.one(1)).is_zero()


class TestStep:
    def test_s2(self):
        d = CauchyDatum(2, 1)
        assert propagate_step(X2Series((d.p0, d.p1)), 2, 1).is_zero()

    def test_s1_k3(self):
        d = CauchyDatum(1, 3)
        assert propagate_step(X2Series((d.p0, d.p1)), 1, 1) == U("(1+x1/3)/3")

    def test_s1_k2(self):
        d = CauchyDatum(1, 2)
        assert propagate_step(X2Series((d.p0, d.p1)), 1, 1) == U("(1+x1/2)^2/4")

    def test_obstruction(self):
        # k = 2 is allowed on one axis for s = n = 2 but is not Cauchy data
        series = X2Series((binomial_profile(2), Polynomial.one(1)))
        with pytest.raises(ObstructionError) as info:
            propagate_step(series, 2, 1)
        assert info.value.order == 1 and not info.value.remainder.is_zero()

    def test_preconditions(self):
        d = CauchyDatum(2, 1)
        with pytest.raises(ValueError):
            propagate_step(X2Series((d.p0, d.p1)), 2, 0)
        with pytest.raises(ValueError):
            propagate_step(X2Series((d.p0, d.p1)), 2, 3)

    def test_coefficient_matches_full_residual(self):
        # truncated arithmetic against the untruncated det - P^(4-s) computed by sympy
        x1, x2 = sp.symbols("x1 x2")
        Q = P("1 + x1 + x2 + 2*x1^2*x2 + x2^2/3 + x1*x2^3")
        e = to_sympy(Q)
        m = sp.Matrix(2, 2, lambda a, b: 0)
        xs = (x1, x2)
        for a in range(2):
            for b in range(2):
                m[a, b] = (e * sp.diff(e, xs[a], xs[b]) - sp.diff(e, xs[a]) * sp.diff(e, xs[b])) * xs[a] \
                    + (e * sp.diff(e, xs[a]) if a == b else 0)
        G = sp.expand(m.det() - e ** 3)
        for h in range(3):
            expected = from_sympy(G.coeff(x2, h), 1) if G.coeff(x2, h) != 0 else Polynomial.zero(1)
            assert _g_coefficient(Q, 1, h) == expected


class TestPropagate:
    @pytest.mark.parametrize("s, k, expected", [
        (3, 1, "1+x1+x2"),
        (2, 1, "(1+x1)*(1+x2)"),
        (1, 2, "(1+x1/2)^2*(1+x2/2)^2"),
        (1, 3, "(1+(x1+x2)/3)^3"),
    ])
    def test_catalog(self, s, k, expected):
        out = propagate(CauchyDatum(s, k), 10)
        assert out.status is Status.TERMINATED
        assert out.solution == P(expected)
        assert out.series.order == 10

    def test_deterministic_and_coherent(self):
        d = CauchyDatum(1, 3)
        a = propagate(d, 6)
        b = propagate(d, 6)
        c = propagate(d, 12)
        assert a.series == b.series
        assert c.series.truncated(6) == a.series

    def test_terminated_outcomes_are_consistent(self):
        for s in (1, 2, 3):
            for d in enumerate_cauchy_data(s):
                out = propagate(d, 8)
                assert mae_residual(out.solution, EinsteinData(s)).verdict
                for i in (0, 1):
                    assert axis_consistency_check(axis_profile(out.solution, i), s)

    def test_obstructed_profiles(self):
        out = propagate_profiles(binomial_profile(2), Polynomial.one(1), 2, 8)
        assert out.status is Status.OBSTRUCTED and out.obstruction_order == 1
        data = out.to_json()
        assert data["obstruction"]["order"] == 1 and data["k"] is None

    def test_axis_equation_failure_is_order_zero(self):
        out = propagate_profiles(U("1+x1"), Polynomial.one(1), 2, 8)
        assert out.status is Status.OBSTRUCTED and out.obstruction_order == 0

    def test_open_series(self):
        # sk = 1 passes the axis equation but has no polynomial continuation
        out = propagate_profiles(U("1+x1"), U("(1+x1)^2"), 1, 6)
        assert out.status is Status.OPEN
        assert out.series.order == 6
        assert out.to_json()["status"] == "still_open"

    def test_requires_order(self):
        with pytest.raises(ValueError):
            propagate(CauchyDatum(3, 1), 1)

    def test_json(self):
        data = propagate(CauchyDatum(2, 1), 5).to_json()
        assert data["status"] == "terminated_polynomial"
        assert len(data["coefficients"]) == 6 and data["terminated_at"] == 1


class TestSeries:
    def test_round_trip(self):
        p = P("(1+x1/2)^2*(1+x2/2)^2")
        series = X2Series.from_polynomial(p, 5)
        assert series.order == 5 and series[4].is_zero()
        assert series.to_polynomial() == p

    def test_rejects_multivariate_coefficients(self):
        with pytest.raises(ValueError):
            X2Series((P("1+x1"),))


class TestClassify:
    @pytest.mark.parametrize("s, expected", [
        (3, ["1+x1+x2"]),
        (2, ["(1+x1)*(1+x2)"]),
        (1, ["(1+x1/2)^2*(1+x2/2)^2", "(1+(x1+x2)/3)^3"]),
    ])
    def test_reproduces_catalog(self, s, expected):
        records = classify(s, 10)
        assert [r.polynomial for r in records] == [P(e) for e in expected]
        assert all(is_admissible(r.polynomial) and r.certificate.verdict for r in records)

    def test_all_resolved(self):
        for s in (1, 2, 3):
            assert classify_outcomes(s, 10).resolved

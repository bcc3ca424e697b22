from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from ma_kahler.geometry import catalog
from ma_kahler.operator import (EinsteinData, d_operator, is_admissible, lambda_bounds,
                                lambda_of, ma_matrix, mae_residual, power_lift,
                                power_reduce, power_residual, qth_root, RootExtractionError)
from ma_kahler.parse import parse_expression
from ma_kahler.poly import PolyMatrix, Polynomial, determinant, exact_divide

from conftest import SYMBOLS, from_sympy, to_sympy, unit_constant_polynomials

CATALOG = [("1+x1+x2", 3), ("(1+x1)*(1+x2)", 2),
           ("(1+(x1+x2)/3)^3", 1), ("(1+x1/2)^2*(1+x2/2)^2", 1)]


def P(text, names=("x1", "x2")):
    return parse_expression(text, names)


def sympy_d_operator(expr, xs):
    """D_n straight from its definition, via sympy's det and cancel."""
    n = len(xs)
    m = sp.Matrix(n, n, lambda a, b: (expr * sp.diff(expr, xs[a], xs[b])
                                      - sp.diff(expr, xs[a]) * sp.diff(expr, xs[b])) * xs[a]
                  + (expr * sp.diff(expr, xs[a]) if a == b else 0))
    return sp.cancel(m.det() / expr ** (n - 1))


class TestMatrix:
    def test_linear(self):
        assert ma_matrix(P("1+x1+x2")) == PolyMatrix(
            [[P("1+x2"), P("-x1")], [P("-x2"), P("1+x1")]])

    def test_constant(self):
        z = Polynomial.zero(2)
        assert ma_matrix(Polynomial.one(2)) == PolyMatrix([[z, z], [z, z]])

    def test_product_is_diagonal(self):
        assert ma_matrix(P("(1+x1)*(1+x2)")) == PolyMatrix(
            [[P("(1+x2)^2"), P("0")], [P("0"), P("(1+x1)^2")]])


class TestDOperator:
    def test_s3(self):
        assert d_operator(P("1+x1+x2")) == Polynomial.one(2)

    def test_s2(self):
        p = P("(1+x1)*(1+x2)")
        assert d_operator(p) == p

    def test_univariate(self):
        p = P("(1+t/2)^2", ["t"])
        assert d_operator(p) == P("1+t+t^2/4", ["t"])

    def test_zero_constant_rejected(self):
        with pytest.raises(ValueError):
            d_operator(P("x1+x2"))

    @given(unit_constant_polynomials(max_degree=3))
    @settings(max_examples=30, deadline=None)
    def test_matches_sympy_definition(self, p):
        xs = SYMBOLS[:2]
        assert d_operator(p) == from_sympy(sympy_d_operator(to_sympy(p), xs), 2)


class TestResidual:
    @pytest.mark.parametrize("text,s", CATALOG)
    def test_catalog(self, text, s):
        assert mae_residual(P(text), EinsteinData(s)).verdict

    def test_non_solution(self):
        # frozen from the sympy definition of D_2
        cert = mae_residual(P("1+x1+x2+x1*x2+x1^2*x2^2"), EinsteinData(2))
        assert not cert.verdict
        assert cert.residual == P("x1^3*x2^2 + x1^2*x2^3 + 8*x1^2*x2^2 + 4*x1^2*x2 + 4*x1*x2^2")

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            mae_residual(P("1+x1+x2"), EinsteinData(1, 1, 3))

    def test_certificate_json(self):
        data = mae_residual(P("1+x1+x2"), EinsteinData(3)).to_json()
        assert data["verdict"] is True and data["lambda"] == "6" and "residual" not in data
        bad = mae_residual(P("1+x1+x2"), EinsteinData(2)).to_json()
        assert bad["verdict"] is False and bad["residual"]["terms"]

    @pytest.mark.parametrize("text,s", CATALOG + [("1+x1+x2+x1*x2^2", 2)])
    def test_swap_equivariance(self, text, s):
        p = P(text)
        e = EinsteinData(s)
        assert mae_residual(p, e).verdict == mae_residual(p.swap_vars(0, 1), e).verdict

    @given(unit_constant_polynomials(max_degree=3), st.integers(1, 3))
    @settings(max_examples=30, deadline=None)
    def test_swap_equivariance_random(self, p, s):
        e = EinsteinData(s)
        r = mae_residual(p, e).residual
        assert mae_residual(p.swap_vars(0, 1), e).residual == r.swap_vars(0, 1)


class TestEinsteinData:
    def test_lambda(self):
        assert EinsteinData(3).lam == 6
        assert EinsteinData(1, 2).lam == 1
        assert EinsteinData(1, 2).rhs_exponent == 5

    def test_bounds(self):
        with pytest.raises(ValueError):
            EinsteinData(4)            # lambda = 8 > 6
        with pytest.raises(ValueError):
            EinsteinData(2, 4)         # not coprime
        assert EinsteinData(4, 1, 3).lam == 8

    def test_lambda_of(self):
        assert lambda_of(3, 1) == 6
        assert lambda_of(1, 2) == 1
        assert lambda_of(2, 1, n=2) == 4
        with pytest.raises(ValueError):
            lambda_of(2, 2)
        with pytest.raises(ValueError):
            lambda_of(7, 1, n=2)


class TestLambdaBounds:
    def test_linear(self):
        assert lambda_bounds(P("1+x1+x2")) == (4, 6)

    def test_degree_four(self):
        assert lambda_bounds(P("(1+x1/2)^2*(1+x2/2)^2")) == (1, 6)

    def test_cubic_contains_two(self):
        lo, hi = lambda_bounds(P("(1+(x1+x2)/3)^3"))
        assert lo == Fraction(4, 3) and lo <= EinsteinData(1).lam <= hi

    def test_constant_rejected(self):
        with pytest.raises(ValueError):
            lambda_bounds(Polynomial.one(2))

    @pytest.mark.parametrize("text,s", CATALOG)
    def test_catalog_lambdas_inside(self, text, s):
        lo, hi = lambda_bounds(P(text))
        assert lo <= EinsteinData(s).lam <= hi


class TestAdmissible:
    def test_examples(self):
        assert is_admissible(P("(1+x1)*(1+x2)"))
        assert not is_admissible(P("1+2x1+x2"))
        assert not is_admissible(P("1+x1+x2-x1*x2"))
        assert not is_admissible(P("2+x1+x2"))
        assert not is_admissible(P("1+x1"))

    @pytest.mark.parametrize("text,s", CATALOG)
    def test_catalog(self, text, s):
        assert is_admissible(P(text))


class TestPowerLift:
    def test_s3_q2(self):
        lifted = power_lift(P("1+x1+x2"), 2)
        assert lifted == P("(1+(x1+x2)/2)^2")
        # q(n+1) - s = 3
        assert d_operator(lifted) ** 2 == lifted ** 3
        assert mae_residual(lifted, EinsteinData(3, 2)).verdict

    def test_identity(self):
        p = P("(1+x1)*(1+x2)")
        assert power_lift(p, 1) is p

    def test_s2_q3(self):
        lifted = power_lift(P("(1+x1)*(1+x2)"), 3)
        assert lifted == P("((1+x1/3)*(1+x2/3))^3")
        assert mae_residual(lifted, EinsteinData(2, 3)).verdict
        assert is_admissible(lifted)

    @pytest.mark.parametrize("text,s", CATALOG)
    @pytest.mark.parametrize("q", [2, 3, 4])
    def test_round_trip(self, text, s, q):
        base = P(text)
        assert power_reduce(power_lift(base, q), q) == base

    @pytest.mark.parametrize("text,s", CATALOG)
    def test_identity_without_coprimality(self, text, s):
        # (s, q) = (2, 2) etc. are not valid EinsteinData, but the lift still solves
        for q in (2, 3, 4):
            assert power_residual(power_lift(P(text), q), s, q).is_zero()

    def test_reduce_rejects_non_powers(self):
        with pytest.raises(RootExtractionError):
            qth_root(P("1+x1+x2+x1*x2"), 2)
        with pytest.raises(RootExtractionError):
            qth_root(P("1+x1+x2"), 2)

    def test_opposite_scaling_fails(self):
        # the substitution x -> q x (instead of x/q) breaks the equation
        wrong = P("1+x1+x2").scale_vars([2, 2]) ** 2
        assert not mae_residual(wrong, EinsteinData(3, 2)).verdict


# structural identities

@pytest.mark.parametrize("n", [2, 3])
@given(data=st.data())
@settings(max_examples=25, deadline=None)
def test_det_divisible_by_power(n, data):
    p = data.draw(unit_constant_polynomials(nvars=n, max_degree=3, max_terms=3))
    det = ma_matrix(p).det()
    quotient = exact_divide(det, p ** (n - 1))
    assert quotient * p ** (n - 1) == det


def _root_product(roots, mults):
    t = Polynomial.variable(0, 1)
    out = Polynomial.one(1)
    for r, k in zip(roots, mults):
        out = out * (t + r) ** k
    return out


@given(st.lists(st.tuples(st.fractions(min_value=-6, max_value=6, max_denominator=3).filter(bool),
                          st.integers(1, 3)), min_size=1, max_size=3,
                unique_by=lambda rk: rk[0]))
@settings(max_examples=40, deadline=None)
def test_d1_closed_form(roots_mults):
    roots = [r for r, _ in roots_mults]
    mults = [k for _, k in roots_mults]
    t = Polynomial.variable(0, 1)
    closed = Polynomial.one(1)
    for r, k in zip(roots, mults):
        closed = closed * (t + r) ** (2 * k - 2)
    inner = Polynomial.zero(1)
    for i, (r, k) in enumerate(zip(roots, mults)):
        term = Polynomial.constant(k * r, 1)
        for j, rj in enumerate(roots):
            if j != i:
                term = term * (t + rj) ** 2
        inner = inner + term
    assert d_operator(_root_product(roots, mults)) == closed * inner

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import strategies as st

from ma_kahler.poly import Polynomial

SYMBOLS = sp.symbols("x1:9")


def to_sympy(P: Polynomial):
    """Independent view of a Polynomial as a sympy expression."""
    xs = SYMBOLS[:P.nvars]
    return sp.Add(*[sp.Rational(c.numerator, c.denominator) * sp.Mul(*[x ** e for x, e in zip(xs, exp)])
                    for exp, c in P.items()])


def from_sympy(expr, nvars: int) -> Polynomial:
    poly = sp.Poly(sp.expand(expr), *SYMBOLS[:nvars])
    return Polynomial(nvars, {m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})


rationals = st.fractions(max_denominator=10 ** 6).filter(lambda f: abs(f.numerator) <= 10 ** 6)


@st.composite
def polynomials(draw, nvars=2, max_degree=3, max_terms=5):
    n = draw(nvars) if isinstance(nvars, st.SearchStrategy) else nvars
    exps = draw(st.lists(st.tuples(*[st.integers(0, max_degree)] * n), max_size=max_terms))
    return Polynomial(n, {e: draw(rationals) for e in exps})


@st.composite
def unit_constant_polynomials(draw, nvars=2, max_degree=4, max_terms=4):
    """Constant term 1, total degree <= max_degree, small integer-ish coefficients."""
    n = nvars
    exps = draw(st.lists(st.tuples(*[st.integers(0, max_degree)] * n)
                         .filter(lambda e: 0 < sum(e) <= max_degree), max_size=max_terms))
    coef = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    terms = {e: draw(coef) for e in exps}
    terms[(0,) * n] = 1
    return Polynomial(n, terms)


@pytest.fixture
def x():
    return [Polynomial.variable(i, 2) for i in range(2)]

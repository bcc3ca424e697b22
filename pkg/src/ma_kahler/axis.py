"""Restrictions of solutions to the coordinate axes.

On an axis a solution restricts to a binomial power ``(1 + t/k)^k`` and the
product of the remaining first partials restricts to another power of the
same binomial. The Cauchy data on ``x2 = 0`` follow from the condition
``s^2 k^2 - 5 s k + 6 = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Sequence

from .operator import d_operator
from .poly import Polynomial, determinant


def binomial_profile(k: int, exponent: int | None = None) -> Polynomial:
    """Univariate ``(1 + t/k)^exponent``; ``exponent`` defaults to ``k``."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    e = k if exponent is None else exponent
    if e < 0:
        raise ValueError(f"negative exponent {e}")
    return Polynomial.from_univariate([1, Fraction(1, k)]) ** e


@dataclass(frozen=True)
class AxisProfile:
    p: Polynomial
    q_profile: Polynomial
    axis: int


def axis_profile(P: Polynomial, axis: int) -> AxisProfile:
    n = P.nvars
    if n < 2:
        raise ValueError("axis profiles need at least two variables")
    if not 0 <= axis < n:
        raise IndexError(f"axis {axis} out of range for {n} variables")
    others = Polynomial.one(n)
    for j in range(n):
        if j != axis:
            others = others * P.partial(j)
    return AxisProfile(P.restrict_axis(axis), others.restrict_axis(axis), axis)


def binomial_power_match(p: Polynomial) -> int | None:
    """Return ``k = deg p`` when ``p == (1 + t/k)^k``, else None."""
    if p.nvars != 1:
        raise ValueError("expected a univariate polynomial")
    k = p.degree()
    if k < 1:
        return None
    return k if p == binomial_profile(k) else None


def admitted_k(s: int, n: int, k: int) -> bool:
    """Whether an axis exponent ``k`` is allowed for ``(s, n)`` before the Diophantine step."""
    if k < 1:
        return False
    if s == n + 1:
        return k == 1
    if s == n:
        return k in (1, 2)
    return 1 <= s <= n - 1


def axis_consistency_check(profile: AxisProfile, s: int, n: int = 2) -> bool:
    k = binomial_power_match(profile.p)
    if k is None or not admitted_k(s, n, k):
        return False
    e = k * (n - s - 1) + 2
    if e < 0 or profile.q_profile != binomial_profile(k, e):
        return False
    lhs = d_operator(profile.p) * profile.q_profile
    return lhs == profile.p ** (n - s + 1)


@dataclass(frozen=True)
class RootSystem:
    """Distinct nonzero roots ``r_i`` (of ``t + r_i``) with multiplicities ``k_i``."""

    roots: tuple
    multiplicities: tuple

    def __post_init__(self):
        roots = tuple(Fraction(r) for r in self.roots)
        object.__setattr__(self, "roots", roots)
        object.__setattr__(self, "multiplicities", tuple(self.multiplicities))
        if len(roots) != len(self.multiplicities) or not roots:
            raise ValueError("need one multiplicity per root and at least one root")
        if any(r == 0 for r in roots) or len(set(roots)) != len(roots):
            raise ValueError("roots must be distinct and nonzero")
        if any(k < 1 for k in self.multiplicities):
            raise ValueError("multiplicities must be positive")

    def polynomial(self) -> Polynomial:
        """``prod (t + r_i)^k_i``, not normalized."""
        out = Polynomial.one(1)
        for r, k in zip(self.roots, self.multiplicities):
            out = out * Polynomial.from_univariate([r, 1]) ** k
        return out


def _root_columns(roots: Sequence[Fraction]) -> list[Polynomial]:
    # column i: r_i * prod_{j != i} (t + r_j)^2, the coefficient of k_i
    cols = []
    for i, r in enumerate(roots):
        col = Polynomial.constant(r, 1)
        for j, rj in enumerate(roots):
            if j != i:
                col = col * Polynomial.from_univariate([rj, 1]) ** 2
        cols.append(col)
    return cols


def root_system_lhs(rs: RootSystem) -> Polynomial:
    cols = _root_columns(rs.roots)
    total = sum((k * c for k, c in zip(rs.multiplicities, cols)), Polynomial.zero(1))
    return total - prod(r * r for r in rs.roots)


def root_system_matrix(roots: Sequence) -> list[list[Fraction]]:
    """Coefficients of the top R powers ``t^(2R-2) .. t^(R-1)`` of each column."""
    roots = [Fraction(r) for r in roots]
    R = len(roots)
    cols = _root_columns(roots)
    return [[c.coefficient((2 * R - 2 - row,)) for c in cols] for row in range(R)]


def vandermonde_det(roots: Sequence) -> Fraction:
    roots = [Fraction(r) for r in roots]
    if not roots:
        raise ValueError("need at least one root")
    if any(r == 0 for r in roots) or len(set(roots)) != len(roots):
        raise ValueError("roots must be distinct and nonzero")
    return Fraction(determinant(root_system_matrix(roots)))


def vandermonde_closed_form(roots: Sequence) -> Fraction:
    roots = [Fraction(r) for r in roots]
    R = len(roots)
    diffs = prod((roots[i] - roots[j] for i in range(R) for j in range(i + 1, R)), start=Fraction(1))
    return factorial(R) * prod(roots, start=Fraction(1)) * diffs


@dataclass(frozen=True)
class CauchyDatum:
    """Initial data ``P(x1, 0) = p0``, ``dP/dx2(x1, 0) = p1`` on the axis ``x2 = 0``."""

    s: int
    k: int

    def __post_init__(self):
        if not diophantine_ok(self.s, self.k):
            raise ValueError(f"(s={self.s}, k={self.k}) is not a root of s^2 k^2 - 5 s k + 6")

    @property
    def p1_exponent(self) -> int:
        return self.k * (1 - self.s) + 2

    @property
    def p0(self) -> Polynomial:
        return binomial_profile(self.k)

    @property
    def p1(self) -> Polynomial:
        return binomial_profile(self.k, self.p1_exponent)

    def to_json(self) -> dict:
        return {"s": self.s, "k": self.k,
                "p0": self.p0.to_json(["x1"]), "p1": self.p1.to_json(["x1"])}


def diophantine(s: int, k: int) -> int:
    return s * s * k * k - 5 * s * k + 6


def diophantine_ok(s: int, k: int) -> bool:
    return s >= 1 and k >= 1 and diophantine(s, k) == 0


def enumerate_cauchy_data(s: int, n: int = 2) -> list[CauchyDatum]:
    """All Cauchy data for ``s``, smallest ``k`` first.

    ``s^2 k^2 - 5 s k + 6 = (sk - 2)(sk - 3)`` so ``sk`` is 2 or 3.
    """
    if n != 2:
        raise ValueError("Cauchy data are only derived for n = 2")
    if s not in (1, 2, 3):
        raise ValueError(f"s must be 1, 2 or 3, got {s}")
    return [CauchyDatum(s, u // s) for u in (2, 3) if u % s == 0]


def soln2_template(k: int, s: int) -> Polynomial:
    """Low-order skeleton shared by every solution with axis data ``(k, k)``.

    The unknown tail divisible by ``x1^2 x2^2`` is set to zero.
    """
    if k < 1 or s < 1:
        raise ValueError("k and s must be positive")
    e = k * (1 - s) + 2
    if e < 0:
        raise ValueError(f"mixed-term exponent k(1-s)+2 = {e} is negative")
    x1 = Polynomial.variable(0, 2)
    x2 = Polynomial.variable(1, 2)
    b1 = 1 + x1 / k
    b2 = 1 + x2 / k
    return (b1 ** k + b2 ** k - 1 + x1 * b2 ** e + x2 * b1 ** e
            - x1 - x2 - (1 - s + Fraction(2, k)) * x1 * x2)

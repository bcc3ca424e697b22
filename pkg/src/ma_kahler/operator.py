"""The polynomial Monge-Ampere operator and exact verification of solutions.

For a polynomial ``P`` in ``n`` real variables the operator is

    D_n(P) = det[(P P_ab - P_a P_b) x_a + P P_a delta_ab] / P^(n-1)

and a rotation-invariant Kahler-Einstein potential ``log P`` with Einstein
constant ``lambda = 2 s / q`` satisfies ``D_n(P) = P^(n + 1 - s/q)``. The
check used here is the integer-exponent form ``D_n(P)^q = P^(q(n+1) - s)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .poly import NotDivisible, PolyMatrix, Polynomial, exact_divide


@dataclass(frozen=True)
class EinsteinData:
    s: int
    q: int = 1
    n: int = 2

    def __post_init__(self):
        if self.s < 1 or self.q < 1 or self.n < 1:
            raise ValueError("s, q and n must be positive integers")
        if gcd(self.s, self.q) != 1:
            raise ValueError(f"s={self.s} and q={self.q} are not coprime")
        if self.lam > 2 * (self.n + 1):
            raise ValueError(
                f"Einstein constant {self.lam} exceeds the bound 2(n+1) = {2 * (self.n + 1)}")

    @property
    def lam(self) -> Fraction:
        return Fraction(2 * self.s, self.q)

    @property
    def rhs_exponent(self) -> int:
        """Exponent of P on the right of ``D_n(P)^q = P^e``."""
        return self.q * (self.n + 1) - self.s

    def to_json(self) -> dict:
        lam = self.lam
        return {"s": self.s, "q": self.q, "n": self.n,
                "lambda": str(lam.numerator) if lam.denominator == 1 else str(lam)}


@dataclass(frozen=True)
class VerificationCertificate:
    candidate: Polynomial
    einstein: EinsteinData
    residual: Polynomial

    @property
    def verdict(self) -> bool:
        return self.residual.is_zero()

    def to_json(self) -> dict:
        out = {"candidate": self.candidate.to_json(), **self.einstein.to_json(),
               "verdict": self.verdict}
        if not self.verdict:
            out["residual"] = self.residual.to_json()
        return out


def lambda_of(s: int, q: int = 1, n: int | None = None) -> Fraction:
    """Einstein constant ``2s/q``; with ``n`` given, also checks ``0 < lambda <= 2(n+1)``."""
    if s < 1 or q < 1:
        raise ValueError("s and q must be positive")
    if gcd(s, q) != 1:
        raise ValueError(f"s={s} and q={q} are not coprime")
    lam = Fraction(2 * s, q)
    if n is not None and lam > 2 * (n + 1):
        raise ValueError(f"lambda={lam} exceeds 2(n+1)={2 * (n + 1)}")
    return lam


def ma_matrix(P: Polynomial) -> PolyMatrix:
    n = P.nvars
    grads = [P.partial(a) for a in range(n)]
    xs = [Polynomial.variable(a, n) for a in range(n)]
    rows = []
    for a in range(n):
        row = []
        for b in range(n):
            entry = (P * grads[a].partial(b) - grads[a] * grads[b]) * xs[a]
            if a == b:
                entry = entry + P * grads[a]
            row.append(entry)
        rows.append(row)
    return PolyMatrix(rows)


def d_operator(P: Polynomial) -> Polynomial:
    """``det(ma_matrix(P)) / P^(n-1)``, which is always an exact division."""
    if P.constant_term() == 0:
        raise ValueError("D_n needs a polynomial with nonzero constant term")
    det = ma_matrix(P).det()
    n = P.nvars
    if n == 1:
        return det
    try:
        return exact_divide(det, P ** (n - 1))
    except NotDivisible as exc:  # pragma: no cover - contradicts the rank-one argument
        raise AssertionError("det(ma_matrix(P)) not divisible by P^(n-1)") from exc


def power_residual(P: Polynomial, s: int, q: int = 1) -> Polynomial:
    """``D_n(P)^q - P^(q(n+1) - s)`` with no coprimality requirement on (s, q)."""
    e = q * (P.nvars + 1) - s
    if e < 0:
        raise ValueError(f"negative exponent q(n+1)-s = {e}")
    return d_operator(P) ** q - P ** e


def mae_residual(P: Polynomial, einstein: EinsteinData) -> VerificationCertificate:
    if P.nvars != einstein.n:
        raise ValueError(f"polynomial has {P.nvars} variables but n={einstein.n}")
    return VerificationCertificate(P, einstein, power_residual(P, einstein.s, einstein.q))


def lambda_bounds(P: Polynomial, n: int | None = None) -> tuple[Fraction, Fraction]:
    """Closed interval ``[2n/deg P, 2(n+1)]`` that must contain the Einstein constant."""
    n = P.nvars if n is None else n
    d = P.degree()
    if d < 1:
        raise ValueError("lambda bounds need a non-constant polynomial")
    return Fraction(2 * n, d), Fraction(2 * (n + 1))


def is_admissible(P: Polynomial) -> bool:
    """Shape check for ``1 + x_1 + ... + x_n + (positive terms of degree >= 2)``."""
    n = P.nvars
    if P.constant_term() != 1:
        return False
    for a in range(n):
        exp = tuple(1 if b == a else 0 for b in range(n))
        if P.coefficient(exp) != 1:
            return False
    return all(c > 0 for e, c in P.items() if sum(e) >= 2)


admissible_candidate_check = is_admissible


def power_lift(S: Polynomial, q: int) -> Polynomial:
    """Map a normal-form solution ``S`` to ``S(x/q)^q``.

    If ``D_n(S) = S^(n+1-s)`` then the result solves the equation for
    Einstein constant ``2s/q``.
    """
    if q < 1:
        raise ValueError("q must be a positive integer")
    if q == 1:
        return S
    return S.scale_vars([Fraction(1, q)] * S.nvars) ** q


class RootExtractionError(ValueError):
    pass


def qth_root(P: Polynomial, q: int) -> Polynomial:
    """The polynomial ``R`` with ``R(0) = 1`` and ``R^q = P``.

    Solved degree by degree: the degree-d part of ``R^q`` is ``q R_d``
    plus products of lower homogeneous parts.
    """
    if q < 1:
        raise ValueError("q must be a positive integer")
    if P.constant_term() != 1:
        raise RootExtractionError("root extraction needs constant term 1")
    if q == 1:
        return P
    deg = P.degree()
    if deg % q:
        raise RootExtractionError(f"degree {deg} is not a multiple of {q}")
    n = P.nvars
    target = deg // q
    R = Polynomial.one(n)
    for d in range(1, target + 1):
        Rq = R ** q
        diff = {e: P.coefficient(e) - Rq.coefficient(e)
                for e in set(P.terms) | set(Rq.terms) if sum(e) == d}
        R = R + Polynomial(n, {e: c / q for e, c in diff.items()})
    if R ** q != P:
        raise RootExtractionError(f"polynomial is not a perfect {q}-th power")
    return R


def power_reduce(P: Polynomial, q: int) -> Polynomial:
    """Inverse of :func:`power_lift`: extract the q-th root and rescale ``x -> q x``."""
    return qth_root(P, q).scale_vars([q] * P.nvars)

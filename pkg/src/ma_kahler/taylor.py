"""Propagation of Cauchy data on ``x2 = 0`` through the n = 2 equation.

Write ``P = sum_h c_h(x1) x2^h`` and ``F = D_2(P) - P^(3-s)``. The
coefficient of ``x2^h`` in ``F`` involves ``c_0 .. c_{h+1}`` and is affine
in ``c_{h+1}`` with multiplier ``(h+1)^2 E(x1)``, where ``E`` is the
:func:`edge_factor` of ``c_0``. Each step therefore fixes ``c_{h+1}``
uniquely, or shows that no polynomial continuation exists.

The engine works with ``G = det(ma_matrix(P)) - P^(4-s) = P F`` so that
nothing but polynomials is ever formed. Once the coefficients of ``F``
below ``x2^h`` vanish, ``[x2^h] G = c_0 [x2^h] F``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum

from .axis import CauchyDatum, enumerate_cauchy_data
from .operator import EinsteinData, is_admissible, mae_residual
from .poly import NotDivisible, Polynomial, exact_divide

log = logging.getLogger(__name__)


class ObstructionError(ArithmeticError):
    def __init__(self, order: int, remainder: Polynomial):
        super().__init__(f"no polynomial continuation at order {order}")
        self.order = order
        self.remainder = remainder


class Status(str, Enum):
    TERMINATED = "terminated_polynomial"
    OPEN = "still_open"
    OBSTRUCTED = "obstructed"


@dataclass(frozen=True)
class X2Series:
    """Truncated series ``sum_{h <= H} c_h(x1) x2^h`` with univariate ``c_h``."""

    coefficients: tuple

    def __post_init__(self):
        cs = tuple(self.coefficients)
        if not cs:
            raise ValueError("a series needs at least c_0")
        if any(c.nvars != 1 for c in cs):
            raise ValueError("series coefficients must be univariate in x1")
        object.__setattr__(self, "coefficients", cs)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, h):
        return self.coefficients[h]

    @classmethod
    def from_polynomial(cls, P: Polynomial, order: int) -> "X2Series":
        cs = P.coefficients_in(1) if P.nvars == 2 else None
        if cs is None:
            raise ValueError("expected a bivariate polynomial")
        cs = list(cs[:order + 1])
        cs += [Polynomial.zero(1)] * (order + 1 - len(cs))
        return cls(tuple(cs))

    def to_polynomial(self, upto: int | None = None) -> Polynomial:
        upto = self.order if upto is None else upto
        out: dict = {}
        for h, c in enumerate(self.coefficients[:upto + 1]):
            for (a,), v in c.items():
                out[(a, h)] = v
        return Polynomial(2, out)

    def truncated(self, order: int) -> "X2Series":
        return X2Series(self.coefficients[:order + 1])

    def to_json(self) -> list:
        return [c.to_json(["x1"]) for c in self.coefficients]


@dataclass
class PropagationOutcome:
    datum: CauchyDatum | None
    series: X2Series
    status: Status
    solution: Polynomial | None = None
    terminated_at: int | None = None
    obstruction_order: int | None = None
    obstruction_remainder: Polynomial | None = None
    s: int | None = None

    def to_json(self) -> dict:
        out = {"s": self.s, "k": self.datum.k if self.datum else None,
               "status": self.status.value,
               "max_order": self.series.order, "coefficients": self.series.to_json()}
        if self.solution is not None:
            out["solution"] = self.solution.to_json()
            out["terminated_at"] = self.terminated_at
        if self.status is Status.OBSTRUCTED:
            out["obstruction"] = {"order": self.obstruction_order,
                                  "remainder": self.obstruction_remainder.to_json(["x1"])}
        return out


def edge_factor(c0: Polynomial) -> Polynomial:
    """``(c0 c0'' - c0'^2) x1 + c0 c0'``, the one-variable Monge-Ampere expression."""
    d1 = c0.partial(0)
    d2 = d1.partial(0)
    t = Polynomial.variable(0, 1)
    return (c0 * d2 - d1 * d1) * t + c0 * d1


def _tmul(a: Polynomial, b: Polynomial, h: int) -> Polynomial:
    # product modulo x2^(h+1)
    out: dict = {}
    for (a1, a2), ca in a.items():
        for (b1, b2), cb in b.items():
            if a2 + b2 > h:
                continue
            e = (a1 + b1, a2 + b2)
            v = out.get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return Polynomial._raw(2, out)


def _tpow(a: Polynomial, e: int, h: int) -> Polynomial:
    out = Polynomial.one(2)
    for _ in range(e):
        out = _tmul(out, a, h)
    return out


def _g_coefficient(P: Polynomial, s: int, h: int) -> Polynomial:
    """``[x2^h] (det(ma_matrix(P)) - P^(4-s))`` as a polynomial in x1."""
    P = P.truncate(1, h + 1)
    P1, P2 = P.partial(0), P.partial(1)
    P11, P12, P22 = P1.partial(0), P1.partial(1), P2.partial(1)
    x1 = Polynomial.variable(0, 2)
    x2 = Polynomial.variable(1, 2)
    m11 = (_tmul(P, P11, h) - _tmul(P1, P1, h)) * x1 + _tmul(P, P1, h)
    m22 = _tmul(_tmul(P, P22, h) - _tmul(P2, P2, h), x2, h) + _tmul(P, P2, h)
    off = _tmul(P, P12, h) - _tmul(P1, P2, h)
    det = _tmul(m11, m22, h) - _tmul(_tmul(off, x1, h), _tmul(off, x2, h), h)
    G = det - _tpow(P, 4 - s, h)
    return _x2_slice(G, h)


def _x2_slice(P: Polynomial, h: int) -> Polynomial:
    return Polynomial._raw(1, {(a,): c for (a, b), c in P.items() if b == h})


def propagate_step(series: X2Series, s: int, h: int) -> Polynomial:
    """Return the unique ``c_{h+1}`` cancelling the ``x2^h`` coefficient of the residual.

    ``series`` must hold ``c_0 .. c_h``. Raises :class:`ObstructionError`
    when the required division is not exact.
    """
    if h < 1:
        raise ValueError("propagation starts at h = 1; c_1 is Cauchy data")
    if series.order < h:
        raise ValueError(f"series known only through order {series.order}")
    c0 = series[0]
    E = edge_factor(c0)
    if E.is_zero():
        raise ValueError("degenerate edge factor: c_0 must be non-constant")
    prefix = X2Series(series.coefficients[:h + 1]).to_polynomial()
    known = _g_coefficient(prefix, s, h)

    bump = prefix + Polynomial(2, {(0, h + 1): 1})
    slope = _g_coefficient(bump, s, h) - known
    expected = (h + 1) ** 2 * c0 * E
    assert slope == expected, f"affine factor at order {h} is {slope}, expected {expected}"

    try:
        return -exact_divide(known, expected)
    except NotDivisible as exc:
        raise ObstructionError(h, exc.remainder) from None


def _initial_residual(c0: Polynomial, c1: Polynomial, s: int) -> Polynomial:
    """``[x2^0] G``; zero exactly when the profiles satisfy the axis equation."""
    return _g_coefficient(X2Series((c0, c1)).to_polynomial(), s, 0)


def propagate(datum: CauchyDatum, max_order: int = 20) -> PropagationOutcome:
    """Determine ``c_2 .. c_H`` from the datum and look for a polynomial solution."""
    return propagate_profiles(datum.p0, datum.p1, datum.s, max_order, datum=datum)


def propagate_profiles(c0: Polynomial, c1: Polynomial, s: int, max_order: int = 20,
                       datum: CauchyDatum | None = None) -> PropagationOutcome:
    """Propagate arbitrary axis profiles ``P(x1, 0) = c0``, ``dP/dx2(x1, 0) = c1``.

    The full ``max_order`` expansion is always computed. A prefix is accepted
    as a solution only after exact verification; it is tested whenever the
    newest coefficient vanishes, which by uniqueness happens one step after
    any exact polynomial solution has been reached.
    """
    if max_order < 2:
        raise ValueError("max_order must be at least 2")
    if c0.constant_term() != 1:
        raise ValueError("c_0 must have constant term 1")
    einstein = EinsteinData(s, 1, 2)
    coeffs = [c0, c1]
    solution = None
    terminated_at = None

    rem = _initial_residual(c0, c1, s)
    if not rem.is_zero():
        return PropagationOutcome(datum, X2Series(tuple(coeffs)), Status.OBSTRUCTED,
                                  obstruction_order=0, obstruction_remainder=rem, s=s)

    for h in range(1, max_order):
        try:
            nxt = propagate_step(X2Series(tuple(coeffs)), s, h)
        except ObstructionError as exc:
            log.debug("profiles (%s, %s) obstructed at order %d", c0, c1, h)
            return PropagationOutcome(datum, X2Series(tuple(coeffs)), Status.OBSTRUCTED,
                                      obstruction_order=exc.order,
                                      obstruction_remainder=exc.remainder, s=s)
        coeffs.append(nxt)
        if solution is None and (nxt.is_zero() or h == max_order - 1):
            top = max(j for j, c in enumerate(coeffs) if not c.is_zero())
            candidate = X2Series(tuple(coeffs)).to_polynomial(top)
            if mae_residual(candidate, einstein).verdict:
                solution, terminated_at = candidate, top
                log.debug("profiles (%s, %s) terminated at x2-degree %d", c0, c1, top)

    series = X2Series(tuple(coeffs))
    if solution is not None:
        return PropagationOutcome(datum, series, Status.TERMINATED, solution, terminated_at, s=s)
    return PropagationOutcome(datum, series, Status.OPEN, s=s)


@dataclass
class Classification:
    s: int
    max_order: int
    outcomes: list = field(default_factory=list)

    @property
    def solutions(self) -> list[Polynomial]:
        return [o.solution for o in self.outcomes
                if o.status is Status.TERMINATED and is_admissible(o.solution)]

    @property
    def open_data(self) -> list[CauchyDatum]:
        return [o.datum for o in self.outcomes if o.status is Status.OPEN]

    @property
    def resolved(self) -> bool:
        return not self.open_data


def classify_outcomes(s: int, max_order: int = 20) -> Classification:
    result = Classification(s, max_order)
    for datum in enumerate_cauchy_data(s):
        result.outcomes.append(propagate(datum, max_order))
    return result


def classify(s: int, max_order: int = 20):
    """Admissible polynomial solutions for ``s`` whose expansion ends by ``max_order``.

    Data still open at ``max_order`` are not reported as absent: check
    :func:`classify_outcomes` and its ``resolved`` flag.
    """
    from .geometry import catalog, make_record

    known = {r.polynomial: r for r in catalog(2)}
    records = []
    for P in classify_outcomes(s, max_order).solutions:
        match = known.get(P)
        if match is not None:
            records.append(match)
        else:
            records.append(make_record(P, s, "unidentified"))
    return records

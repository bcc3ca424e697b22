"""Known solutions, their q-families, and the product-of-projective-spaces calculator."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, gcd, isqrt, prod
from pathlib import Path
from typing import Sequence

from .operator import (EinsteinData, VerificationCertificate, is_admissible,
                       mae_residual, power_lift)
from .parse import parse_expression
from .poly import format_rational

SCHEMA_VERSION = 1


class VerificationFailure(AssertionError):
    pass


@dataclass(frozen=True)
class SolutionRecord:
    """A solution together with its Einstein data and a passing certificate.

    ``base`` is the normal-form (q = 1) expression the record was built from;
    the label's ``{q}`` placeholder is filled by :meth:`label_for`.
    """

    base: str
    einstein: EinsteinData
    label_template: str
    certificate: VerificationCertificate
    metric_multiple: int = 1

    @property
    def polynomial(self):
        return self.certificate.candidate

    @property
    def label(self) -> str:
        return self.label_template.format(q=_fmt_multiple(self.metric_multiple))

    def to_json(self) -> dict:
        return {"label": self.label, "expression": self.polynomial.to_string(),
                **self.certificate.to_json()}


def _fmt_multiple(m: int) -> str:
    return "" if m == 1 else f"{m} "


def make_record(expr_or_poly, s: int, label_template: str, q: int = 1,
                metric_multiple: int = 1) -> SolutionRecord:
    P = parse_expression(expr_or_poly) if isinstance(expr_or_poly, str) else expr_or_poly
    einstein = EinsteinData(s, q, P.nvars)
    cert = mae_residual(P, einstein)
    if not cert.verdict:
        raise VerificationFailure(f"{P} does not solve the equation for {einstein}")
    if not is_admissible(P):
        raise VerificationFailure(f"{P} is not of admissible shape")
    base = expr_or_poly if isinstance(expr_or_poly, str) else P.to_string()
    return SolutionRecord(base, einstein, label_template, cert, metric_multiple)


CP2 = "CP^2, {q}g_FS"
CP1xCP1 = "CP^1 x CP^1, {q}(g_FS + g_FS)"

# (expression, s, label template, multiple of the Fubini-Study metric)
_CATALOG_N2 = [
    ("1+x1+x2", 3, CP2, 1),
    ("(1+x1)*(1+x2)", 2, CP1xCP1, 1),
    ("(1+(x1+x2)/3)^3", 1, CP2, 3),
    ("(1+x1/2)^2*(1+x2/2)^2", 1, CP1xCP1, 2),
]


def catalog(n: int = 2) -> list[SolutionRecord]:
    """The four normal-form solutions in two variables, verified on construction.

    The s = 1 labels come from reading each polynomial as a power of an
    s = 3 or s = 2 solution; they are descriptive, not verified claims.
    """
    if n != 2:
        raise ValueError("only the two-dimensional catalog is known")
    return [make_record(e, s, label, metric_multiple=m) for e, s, label, m in _CATALOG_N2]


def q_family(record: SolutionRecord, q: int) -> SolutionRecord:
    """Lift a q = 1 record to Einstein constant ``2s/q``."""
    if record.einstein.q != 1:
        raise ValueError("q_family expects a normal-form record (q = 1)")
    if q == 1:
        return record
    P = power_lift(record.polynomial, q)
    return make_record(P, record.einstein.s, record.label_template, q=q,
                       metric_multiple=record.metric_multiple * q)


def catalog_json(n: int = 2) -> dict:
    return {"schema": SCHEMA_VERSION, "n": n,
            "records": [r.to_json() for r in catalog(n)]}


def write_catalog(path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(catalog_json(), indent=2, ensure_ascii=False) + "\n",
                    encoding="utf-8")
    return path


@dataclass(frozen=True)
class FlagProduct:
    """``CP^n1 x ... x CP^nk`` with metric ``q (c_1 g_FS + ... + c_k g_FS)``."""

    factor_dims: tuple
    q: int = 1

    def __post_init__(self):
        dims = tuple(int(d) for d in self.factor_dims)
        object.__setattr__(self, "factor_dims", dims)
        if not dims or any(d < 1 for d in dims):
            raise ValueError("factor dimensions must be positive integers")
        if self.q < 1:
            raise ValueError("q must be a positive integer")

    @property
    def G(self) -> int:
        return gcd(*(d + 1 for d in self.factor_dims))

    def weights(self) -> list[Fraction]:
        """``c_i = prod_{j != i} (n_j + 1) / G^(k-1)`` as exact rationals."""
        k = len(self.factor_dims)
        sizes = [d + 1 for d in self.factor_dims]
        denom = self.G ** (k - 1)
        return [Fraction(prod(sizes[:i] + sizes[i + 1:]), denom) for i in range(k)]

    def c(self) -> list[int]:
        ws = self.weights()
        bad = [w for w in ws if w.denominator != 1]
        if bad:
            raise ValueError(f"non-integral weights {[format_rational(w) for w in bad]}")
        return [int(w) for w in ws]

    def to_json(self) -> dict:
        return {"dims": list(self.factor_dims), "q": self.q, "G": self.G,
                "c": self.c(), "N": embedding_dimension(self)}


def embedding_dimension(fp: FlagProduct) -> int:
    """``N = prod_i C(n_i + q c_i, q c_i) - 1``."""
    return prod(comb(n + fp.q * c, fp.q * c) for n, c in zip(fp.factor_dims, fp.c())) - 1


@dataclass(frozen=True)
class VeroneseConstant:
    radicand: Fraction

    @property
    def is_perfect_square(self) -> bool:
        r = self.radicand
        return (r >= 0 and isqrt(r.numerator) ** 2 == r.numerator
                and isqrt(r.denominator) ** 2 == r.denominator)


def veronese_constant(c: int) -> VeroneseConstant:
    """Radicand ``(c-1)! / c^(c-2)`` of the Veronese normalization."""
    if c < 1:
        raise ValueError("c must be a positive integer")
    return VeroneseConstant(Fraction(factorial(c - 1)) / Fraction(c) ** (c - 2))


def embedding_for(dims: Sequence[int], q: int = 1) -> dict:
    return FlagProduct(tuple(dims), q).to_json()

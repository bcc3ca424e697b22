"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` maps exponent tuples to :class:`fractions.Fraction`
coefficients. Zero coefficients are never stored, so two polynomials are
equal exactly when their term maps are equal. Instances are immutable.

Monomials are ordered by total degree first and lexicographically second,
with ``x1`` the most significant variable. This is the order used for
printing (descending) and for leading-term elimination in
:func:`exact_divide`.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as _cartesian
from math import gcd
from numbers import Rational
from typing import Iterable, Mapping, Sequence

try:
    from gmpy2 import mpz as _bigint
except ImportError:  # plain ints are correct, only slower
    _bigint = int


class NotDivisible(ArithmeticError):
    """Raised by :func:`exact_divide` when the divisor does not divide.

    The partially reduced remainder is kept on ``remainder``.
    """

    def __init__(self, remainder: "Polynomial", message: str = "division is not exact"):
        super().__init__(message)
        self.remainder = remainder


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"a/b"`` strings to a Fraction.

    Floats are refused: every coefficient in this package is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


def format_rational(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def monomial_key(exp: tuple[int, ...]) -> tuple:
    """Sort key for the (total degree, lexicographic) order."""
    return (sum(exp), exp)


def default_names(nvars: int) -> list[str]:
    return [f"x{i + 1}" for i in range(nvars)]


class Polynomial:
    """Immutable sparse polynomial in ``nvars`` variables over the rationals."""

    __slots__ = ("_nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | None = None):
        if nvars < 1:
            raise ValueError("a polynomial needs at least one variable")
        clean: dict[tuple[int, ...], Fraction] = {}
        for exp, coef in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} does not have length {nvars}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = clean.get(exp, Fraction(0)) + to_rational(coef)
            if c:
                clean[exp] = c
            else:
                clean.pop(exp, None)
        self._nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Polynomial":
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj._nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, value, nvars: int) -> "Polynomial":
        c = to_rational(value)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls.constant(1, nvars)

    @classmethod
    def variable(cls, index: int, nvars: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[index] = 1
        return cls._raw(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def from_univariate(cls, coeffs: Sequence, nvars: int = 1, index: int = 0) -> "Polynomial":
        """Build ``sum(coeffs[j] * x_index**j)``."""
        terms = {}
        for j, c in enumerate(coeffs):
            exp = [0] * nvars
            exp[index] = j
            terms[tuple(exp)] = c
        return cls(nvars, terms)

    # basic accessors

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self._nvars)

    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, index: int) -> int:
        return max((e[index] for e in self._terms), default=-1)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in descending (degree, lex) order."""
        return sorted(self._terms.items(), key=lambda t: monomial_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[tuple[int, ...], Fraction]:
        if not self._terms:
            raise ValueError("the zero polynomial has no leading term")
        exp = max(self._terms, key=monomial_key)
        return exp, self._terms[exp]

    # arithmetic

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other._nvars != self._nvars:
                raise ValueError(
                    f"variable-count mismatch: {self._nvars} vs {other._nvars}")
            return other
        return Polynomial.constant(other, self._nvars)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self._terms)
        for exp, c in other._terms.items():
            v = terms.get(exp, 0) + c
            if v:
                terms[exp] = v
            else:
                terms.pop(exp, None)
        return Polynomial._raw(self._nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self._nvars, {e: -c for e, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._coerce(other)
            return Polynomial._raw(self._nvars, _mul_terms(self._terms, other._terms))
        try:
            c = to_rational(other)
        except TypeError:
            return NotImplemented
        if not c:
            return Polynomial.zero(self._nvars)
        return Polynomial._raw(self._nvars, {e: v * c for e, v in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, other):
        # only division by a nonzero scalar; polynomial division is exact_divide
        if isinstance(other, Polynomial):
            if not other.is_constant() or other.is_zero():
                return NotImplemented
            other = other.constant_term()
        try:
            c = to_rational(other)
        except TypeError:
            return NotImplemented
        if not c:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self * (1 / c)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.one(self._nvars)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._nvars == other._nvars and self._terms == other._terms
        try:
            return self == Polynomial.constant(other, self._nvars)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._nvars, frozenset(self._terms.items())))
        return self._hash

    # calculus and substitutions

    def partial(self, index: int) -> "Polynomial":
        """Formal partial derivative with respect to variable ``index``."""
        if not 0 <= index < self._nvars:
            raise IndexError(f"variable index {index} out of range for {self._nvars} variables")
        terms = {}
        for exp, c in self._terms.items():
            k = exp[index]
            if k:
                new = exp[:index] + (k - 1,) + exp[index + 1:]
                terms[new] = c * k
        return Polynomial._raw(self._nvars, terms)

    def scale_vars(self, factors: Sequence) -> "Polynomial":
        """Substitute ``x_i -> factors[i] * x_i``."""
        if len(factors) != self._nvars:
            raise ValueError(f"need {self._nvars} scale factors, got {len(factors)}")
        fs = [to_rational(f) for f in factors]
        if any(f == 0 for f in fs):
            raise ValueError("scale factors must be nonzero")
        terms = {}
        for exp, c in self._terms.items():
            for f, e in zip(fs, exp):
                if e:
                    c = c * f ** e
            terms[exp] = c
        return Polynomial._raw(self._nvars, terms)

    def restrict_axis(self, index: int) -> "Polynomial":
        """Set every variable except ``index`` to zero; the result is univariate."""
        if not 0 <= index < self._nvars:
            raise IndexError(f"axis index {index} out of range for {self._nvars} variables")
        terms = {}
        for exp, c in self._terms.items():
            if all(e == 0 for i, e in enumerate(exp) if i != index):
                terms[(exp[index],)] = c
        return Polynomial._raw(1, terms)

    def swap_vars(self, i: int, j: int) -> "Polynomial":
        terms = {}
        for exp, c in self._terms.items():
            e = list(exp)
            e[i], e[j] = e[j], e[i]
            terms[tuple(e)] = c
        return Polynomial._raw(self._nvars, terms)

    def embed(self, nvars: int, index: int = 0) -> "Polynomial":
        """View a univariate polynomial as a polynomial in variable ``index`` of ``nvars``."""
        if self._nvars != 1:
            raise ValueError("only univariate polynomials can be embedded")
        terms = {}
        for (k,), c in self._terms.items():
            exp = [0] * nvars
            exp[index] = k
            terms[tuple(exp)] = c
        return Polynomial._raw(nvars, terms)

    def coefficients_in(self, index: int) -> list["Polynomial"]:
        """Split as ``sum_h c_h * x_index**h``; each ``c_h`` drops variable ``index``.

        For a bivariate polynomial and ``index=1`` the ``c_h`` are univariate in x1.
        """
        if self._nvars < 2:
            raise ValueError("need at least two variables")
        deg = self.degree_in(index)
        buckets: list[dict] = [{} for _ in range(deg + 1)]
        for exp, c in self._terms.items():
            rest = exp[:index] + exp[index + 1:]
            buckets[exp[index]][rest] = c
        return [Polynomial._raw(self._nvars - 1, b) for b in buckets]

    def truncate(self, index: int, order: int) -> "Polynomial":
        """Drop terms whose exponent in variable ``index`` exceeds ``order``."""
        return Polynomial._raw(
            self._nvars, {e: c for e, c in self._terms.items() if e[index] <= order})

    def evaluate(self, point: Sequence) -> Fraction:
        vals = [to_rational(v) for v in point]
        total = Fraction(0)
        for exp, c in self._terms.items():
            term = c
            for v, e in zip(vals, exp):
                if e:
                    term *= v ** e
            total += term
        return total

    # text and JSON

    def to_string(self, names: Sequence[str] | None = None) -> str:
        """Canonical text form, e.g. ``1/4*x1^2 + x1 + 1``."""
        names = list(names) if names is not None else default_names(self._nvars)
        if len(names) != self._nvars:
            raise ValueError("one name per variable is required")
        if not self._terms:
            return "0"
        pieces = []
        for exp, c in self.sorted_terms():
            factors = []
            for name, e in zip(names, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            if not factors:
                body = format_rational(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = format_rational(mag) + "*" + "*".join(factors)
            pieces.append(("-" if c < 0 else "+", body))
        sign, body = pieces[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self._nvars}, {self.to_string()!r})"

    def to_json(self, names: Sequence[str] | None = None) -> dict:
        names = list(names) if names is not None else default_names(self._nvars)
        return {
            "vars": names,
            "terms": [{"exp": list(e), "coef": format_rational(c)}
                      for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Polynomial":
        names = data["vars"]
        terms: dict = {}
        for t in data["terms"]:
            exp = tuple(t["exp"])
            if len(exp) != len(names):
                raise ValueError(f"exponent {list(exp)} does not match {len(names)} variables")
            coef = t["coef"]
            if not isinstance(coef, (str, int)):
                raise TypeError("coefficients must be strings or integers")
            if exp in terms:
                raise ValueError(f"repeated monomial {list(exp)}")
            terms[exp] = to_rational(coef)
        return cls(len(names), terms)


def _mul_terms(a: dict, b: dict) -> dict:
    if len(a) * len(b) >= _KRONECKER_MIN_WORK:
        out = _mul_kronecker(a, b)
        if out is not None:
            return out
    return _mul_naive(a, b)


def _mul_naive(a: dict, b: dict) -> dict:
    out: dict = {}
    get = out.get
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


_KRONECKER_MIN_WORK = 400
_KRONECKER_MAX_SPARSITY = 64


def _lcm_denominators(terms: dict) -> int:
    den = 1
    for c in terms.values():
        d = c.denominator
        if den % d:
            den = den * d // gcd(den, d)
    return den


def _mul_kronecker(a: dict, b: dict) -> dict | None:
    """Product via one big-integer multiplication.

    Coefficients are scaled to integers and laid out in fixed-width slots
    of a dense exponent box; a per-slot bias makes every slot of the
    product non-negative so it can be read back bytewise. Returns None when
    the dense box would be much larger than the sparse work.
    """
    n = len(next(iter(a)))
    box = [max(e[i] for e in a) + max(e[i] for e in b) + 1 for i in range(n)]
    strides = [1] * n
    for i in range(1, n):
        strides[i] = strides[i - 1] * box[i - 1]
    slots = strides[-1] * box[-1]
    if slots > _KRONECKER_MAX_SPARSITY * len(a) * len(b):
        return None

    la, lb = _lcm_denominators(a), _lcm_denominators(b)
    ia = {e: (c * la).numerator for e, c in a.items()}
    ib = {e: (c * lb).numerator for e, c in b.items()}
    bound = max(map(abs, ia.values())) * max(map(abs, ib.values())) * min(len(a), len(b))
    width = (bound.bit_length() + 2 + 7) // 8
    bits = 8 * width

    def pack(terms):
        pos = bytearray(slots * width)
        neg = bytearray(slots * width)
        for e, c in terms.items():
            k = sum(x * st for x, st in zip(e, strides)) * width
            if c > 0:
                pos[k:k + width] = c.to_bytes(width, "little")
            else:
                neg[k:k + width] = (-c).to_bytes(width, "little")
        return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")

    half = 1 << (bits - 1)
    bias = int.from_bytes(half.to_bytes(width, "little") * slots, "little")
    product_ = int(_bigint(pack(ia)) * _bigint(pack(ib)))
    raw = (product_ + bias).to_bytes(slots * width, "little")
    scale = la * lb
    out = {}
    zero_slot = half.to_bytes(width, "little")
    for k in range(slots):
        chunk = raw[k * width:(k + 1) * width]
        if chunk == zero_slot:
            continue
        v = int.from_bytes(chunk, "little") - half
        exp = []
        rest = k
        for i in range(n - 1, -1, -1):
            q, rest = divmod(rest, strides[i])
            exp.append(q)
        out[tuple(reversed(exp))] = Fraction(v, scale)
    return out


def add(a: Polynomial, b: Polynomial) -> Polynomial:
    return a + b


def mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def power(a: Polynomial, e: int) -> Polynomial:
    return a ** e


def partial(a: Polynomial, index: int) -> Polynomial:
    return a.partial(index)


def scale_vars(a: Polynomial, factors: Sequence) -> Polynomial:
    return a.scale_vars(factors)


def restrict_axis(a: Polynomial, index: int) -> Polynomial:
    return a.restrict_axis(index)


def exact_divide(a: Polynomial, b: Polynomial) -> Polynomial:
    """Return ``c`` with ``a == b * c``.

    Leading terms of the running remainder are cancelled against the leading
    term of ``b``. If the remainder's leading monomial is not a multiple of
    ``lt(b)`` then ``b`` cannot divide ``a`` and :class:`NotDivisible` is
    raised.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.nvars != b.nvars:
        raise ValueError(f"variable-count mismatch: {a.nvars} vs {b.nvars}")
    n = a.nvars
    bexp, bcoef = b.leading_term()
    btail = [(e, c) for e, c in b.items() if e != bexp]
    rem = dict(a.items())
    quot: dict = {}
    while rem:
        rexp = max(rem, key=monomial_key)
        shift = tuple(x - y for x, y in zip(rexp, bexp))
        if any(s < 0 for s in shift):
            raise NotDivisible(Polynomial._raw(n, rem))
        q = rem.pop(rexp) / bcoef
        quot[shift] = q
        for e, c in btail:
            m = tuple(x + y for x, y in zip(e, shift))
            v = rem.get(m, 0) - q * c
            if v:
                rem[m] = v
            else:
                rem.pop(m, None)
    return Polynomial._raw(n, quot)


def determinant(rows: Sequence[Sequence]):
    """Determinant by cofactor expansion along the first row.

    Works for any commutative ring elements supporting ``+``, ``-`` and
    ``*`` (Polynomials, Fractions, ints). Fine for the n <= 5 sizes used
    here; fraction-free elimination would be the route for larger n.
    An all-zero first row yields the integer 0.
    """
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("determinant needs a non-empty square matrix")
    return _laplace([list(r) for r in rows])


def _laplace(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = 0
    for j, entry in enumerate(m[0]):
        if not entry:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = entry * _laplace(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


class PolyMatrix:
    """Square matrix of polynomials sharing one variable count."""

    def __init__(self, entries: Sequence[Sequence[Polynomial]]):
        rows = [list(r) for r in entries]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("PolyMatrix must be square and non-empty")
        counts = {p.nvars for r in rows for p in r}
        if len(counts) != 1:
            raise ValueError("all entries must share the same variable count")
        self.rows = rows
        self.dimension = n
        self.nvars = counts.pop()

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(p) for p in r) + "]" for r in self.rows)
        return f"PolyMatrix([{body}])"

    def det(self) -> Polynomial:
        d = determinant(self.rows)
        return d if isinstance(d, Polynomial) else Polynomial.constant(d, self.nvars)

    @classmethod
    def identity(cls, n: int, nvars: int) -> "PolyMatrix":
        return cls([[Polynomial.one(nvars) if i == j else Polynomial.zero(nvars)
                     for j in range(n)] for i in range(n)])


def monomials_up_to(nvars: int, degree: int) -> Iterable[tuple[int, ...]]:
    """All exponent tuples of total degree <= ``degree``."""
    for exp in _cartesian(range(degree + 1), repeat=nvars):
        if sum(exp) <= degree:
            yield exp

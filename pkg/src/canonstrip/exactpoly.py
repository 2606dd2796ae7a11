"""Exact univariate polynomials over the rationals.

Everything here is exact: coefficients are :class:`fractions.Fraction`, and
no operation rounds.  This is the substrate for Hilbert polynomials, which
are recovered from integer value tables by Newton forward differences and
then transformed by shifts ``p(t) -> p(t - j)`` and linear combinations.

The zero polynomial is stored with an empty coefficient tuple and has degree
:data:`ZERO_DEGREE`, so leading-term cancellation is always visible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, lcm
from numbers import Rational
from typing import Iterable, Sequence

from .errors import DegreeOverflow, InsufficientPoints, ZeroPolynomial

ZERO_DEGREE = -1


def _fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"cannot convert {x!r} exactly to a rational")


class ExactPolynomial:
    """Dense polynomial with rational coefficients, lowest degree first.

    >>> p = ExactPolynomial([3, 7, 6, 2]) / 3
    >>> p(1), p(2)
    (Fraction(6, 1), Fraction(19, 1))
    """

    __slots__ = ("_coefficients",)

    def __init__(self, coefficients: Iterable = ()):
        coeffs = [_fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self._coefficients = tuple(coeffs)

    @classmethod
    def monomial(cls, degree: int, coefficient=1) -> "ExactPolynomial":
        return cls([0] * degree + [coefficient])

    @classmethod
    def from_roots(cls, roots: Iterable, leading=1) -> "ExactPolynomial":
        p = cls([leading])
        for r in roots:
            p = p * cls([-_fraction(r), 1])
        return p

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._coefficients

    @property
    def degree(self) -> int:
        return len(self._coefficients) - 1

    def is_zero(self) -> bool:
        return not self._coefficients

    @property
    def leading(self) -> Fraction:
        if self.is_zero():
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self._coefficients[-1]

    def __call__(self, x):
        """Horner evaluation; exact for rational ``x``, generic otherwise."""
        if isinstance(x, int):
            x = Fraction(x)
        acc = 0
        for c in reversed(self._coefficients):
            acc = acc * x + c
        return Fraction(acc) if isinstance(acc, int) else acc

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactPolynomial([other])
        if not isinstance(other, ExactPolynomial):
            return NotImplemented
        return self._coefficients == other._coefficients

    def __hash__(self):
        return hash(self._coefficients)

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self._coefficients), len(other._coefficients))
        a = self._coefficients + (Fraction(0),) * (n - len(self._coefficients))
        b = other._coefficients + (Fraction(0),) * (n - len(other._coefficients))
        return ExactPolynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return ExactPolynomial(-c for c in self._coefficients)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExactPolynomial(c * other for c in self._coefficients)
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return ExactPolynomial()
        out = [Fraction(0)] * (len(self._coefficients) + len(other._coefficients) - 1)
        for i, a in enumerate(self._coefficients):
            if a:
                for j, b in enumerate(other._coefficients):
                    out[i + j] += a * b
        return ExactPolynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        scalar = _fraction(scalar)
        return ExactPolynomial(c / scalar for c in self._coefficients)

    def __pow__(self, n: int):
        out = ExactPolynomial([1])
        for _ in range(n):
            out = out * self
        return out

    def __divmod__(self, divisor: "ExactPolynomial"):
        if divisor.is_zero():
            raise ZeroPolynomial("division by the zero polynomial")
        rem = list(self._coefficients)
        dd = divisor.degree
        lead = divisor.leading
        if len(rem) - 1 < dd:
            return ExactPolynomial(), self
        quot = [Fraction(0)] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i] / lead
            quot[i - dd] = c
            if c:
                for j, d in enumerate(divisor._coefficients):
                    rem[i - dd + j] -= c * d
        return ExactPolynomial(quot), ExactPolynomial(rem[:dd])

    def __floordiv__(self, divisor):
        return divmod(self, divisor)[0]

    def __mod__(self, divisor):
        return divmod(self, divisor)[1]

    def derivative(self) -> "ExactPolynomial":
        return ExactPolynomial(i * c for i, c in enumerate(self._coefficients) if i)

    def monic(self) -> "ExactPolynomial":
        return self / self.leading

    def integer_coefficients(self) -> list[int]:
        """Primitive integer multiple of ``self`` with positive leading term."""
        if self.is_zero():
            return []
        den = lcm(*(c.denominator for c in self._coefficients))
        ints = [int(c * den) for c in self._coefficients]
        content = gcd(*ints)
        if ints[-1] < 0:
            content = -content
        return [c // content for c in ints]

    def reflect(self, centre_twice) -> "ExactPolynomial":
        """Return ``q`` with ``q(t) = p(-c - t)`` where ``c = centre_twice``."""
        shifted = shift(self, centre_twice)
        return ExactPolynomial(c if i % 2 == 0 else -c for i, c in enumerate(shifted.coefficients))

    def __repr__(self):
        return f"ExactPolynomial({[str(c) for c in self._coefficients]})"

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self._coefficients[i]
            if not c:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if mono and abs(c) == 1:
                body = mono
            elif mono:
                body = f"{abs(c)}*{mono}"
            else:
                body = str(abs(c))
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> dict:
        return {"coefficients": [f"{c.numerator}/{c.denominator}" for c in self._coefficients]}

    @classmethod
    def from_json(cls, data) -> "ExactPolynomial":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(Fraction(s) for s in data["coefficients"])


def _coerce(x) -> ExactPolynomial:
    if isinstance(x, ExactPolynomial):
        return x
    return ExactPolynomial([x])


@dataclass(frozen=True)
class ValueTable:
    """Exact integer values of a function at ``offset, offset + 1, ...``."""

    values: tuple[int, ...]
    offset: int = 0

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if not self.values:
            raise InsufficientPoints("a value table needs at least one entry")

    def __len__(self):
        return len(self.values)


def interpolate(table: ValueTable | Sequence[int], degree: int) -> ExactPolynomial:
    """Fit a polynomial of degree at most ``degree`` through ``table``.

    Newton forward differences give the coefficients in the binomial basis
    ``C(t - offset, j)``, which is then expanded into monomials.  Entries past
    the first ``degree + 1`` are used as checks.

    Raises
    ------
    InsufficientPoints
        fewer than ``degree + 1`` values.
    DegreeOverflow
        a surplus value disagrees with the interpolant.
    """
    if not isinstance(table, ValueTable):
        table = ValueTable(tuple(table))
    if degree < 0:
        raise ValueError("degree must be non-negative")
    if len(table) < degree + 1:
        raise InsufficientPoints(f"need {degree + 1} values, got {len(table)}")

    row = list(table.values[: degree + 1])
    leading_diffs = []
    for _ in range(degree + 1):
        leading_diffs.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]

    # Expand sum_j d_j C(s, j) in s, then substitute s = t - offset.
    coeffs = [Fraction(0)] * (degree + 1)
    basis = [Fraction(1)]
    for j, d in enumerate(leading_diffs):
        if d:
            for i, b in enumerate(basis):
                coeffs[i] += d * b
        nxt = [Fraction(0)] * (len(basis) + 1)
        for i, b in enumerate(basis):
            nxt[i + 1] += b / (j + 1)
            nxt[i] -= b * j / (j + 1)
        basis = nxt
    p = shift(ExactPolynomial(coeffs), table.offset)

    for k in range(degree + 1, len(table)):
        x = table.offset + k
        if p(x) != table.values[k]:
            raise DegreeOverflow(
                f"value at {x} is {table.values[k]}, interpolant of degree {degree} gives {p(x)}"
            )
    return p


def shift(p: ExactPolynomial, j) -> ExactPolynomial:
    """Return ``q(t) = p(t - j)``, by binomial expansion."""
    j = _fraction(j)
    if j == 0 or p.is_zero():
        return p
    out = [Fraction(0)] * (p.degree + 1)
    for i, c in enumerate(p.coefficients):
        if not c:
            continue
        power = Fraction(1)
        # c (t - j)^i = c sum_m C(i, m) t^m (-j)^(i - m)
        for m in range(i, -1, -1):
            out[m] += c * comb(i, m) * power
            power *= -j
    return ExactPolynomial(out)


def linear_combine(terms: Iterable[tuple[object, ExactPolynomial]]) -> ExactPolynomial:
    out = ExactPolynomial()
    for coefficient, p in terms:
        out = out + p * _fraction(coefficient)
    return out


def exact_divide_by_root(p: ExactPolynomial, root) -> tuple[ExactPolynomial, bool]:
    """Synthetic division by ``t - root`` when ``root`` is an exact zero of ``p``."""
    if p.is_zero():
        raise ZeroPolynomial("cannot deflate the zero polynomial")
    root = _fraction(root)
    acc = Fraction(0)
    partial = []
    for c in reversed(p.coefficients):
        acc = acc * root + c
        partial.append(acc)
    if partial[-1] != 0:
        return p, False
    return ExactPolynomial(reversed(partial[:-1])), True


def poly_gcd(a: ExactPolynomial, b: ExactPolynomial) -> ExactPolynomial:
    """Monic gcd by the Euclidean algorithm."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


_MERSENNE_61 = (1 << 61) - 1


def _gcd_degree_mod(a: list[int], b: list[int], prime: int) -> int:
    """Degree of gcd(a, b) over GF(prime); coefficients lowest degree first."""

    def trim(c):
        c = [x % prime for x in c]
        while c and c[-1] == 0:
            c.pop()
        return c

    a, b = trim(a), trim(b)
    while b:
        inv = pow(b[-1], -1, prime)
        while len(a) >= len(b):
            factor = a[-1] * inv % prime
            off = len(a) - len(b)
            for i, x in enumerate(b):
                a[off + i] = (a[off + i] - factor * x) % prime
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) - 1


def is_squarefree(p: ExactPolynomial) -> bool | None:
    """Fast sufficient test: ``True`` when gcd(p, p') is constant modulo a large prime.

    Returns ``None`` when the modular test is inconclusive.
    """
    ints = p.integer_coefficients()
    if ints[-1] % _MERSENNE_61 == 0:
        return None
    deriv = [i * c for i, c in enumerate(ints)][1:]
    return True if _gcd_degree_mod(ints, deriv, _MERSENNE_61) == 0 else None


def squarefree_decomposition(p: ExactPolynomial) -> list[tuple[ExactPolynomial, int]]:
    """Yun's algorithm: ``p = lc * prod f_i^i`` with pairwise coprime squarefree ``f_i``.

    Returns the non-constant factors with their multiplicities.
    """
    if p.is_zero():
        raise ZeroPolynomial("squarefree decomposition of zero")
    out = []
    a = p.monic()
    if a.degree == 0:
        return out
    if is_squarefree(a):
        return [(a, 1)]
    b = a.derivative()
    c = poly_gcd(a, b)
    w = a // c
    y = b // c
    z = y - w.derivative()
    i = 1
    while w.degree > 0:
        f = poly_gcd(w, z)
        if f.degree > 0:
            out.append((f, i))
        w = w // f
        y = z // f
        z = y - w.derivative()
        i += 1
    return out

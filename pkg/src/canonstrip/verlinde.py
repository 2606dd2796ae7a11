"""Verlinde numbers for rank 2 bundles with fixed odd determinant.

The moduli space ``M = M_C(2, L)`` of a genus ``g`` curve is smooth of
dimension ``3g - 3``, with Picard group generated by the theta divisor and
``-K_M = 2 Theta``.  Its Verlinde numbers ``h0(M, Theta^k)`` are computed
two ways:

* :func:`verlinde_det` -- exactly, from a ``g x g`` integer determinant
  (fraction-free Bareiss elimination);
* :func:`verlinde_trig` -- numerically, from the trigonometric sum, and used
  only as an independent check of the first.

:func:`hilbert_polynomial` interpolates the exact values into the Hilbert
polynomial of ``(M, Theta)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath

from .errors import InvalidGenus, NonIntegerResult, PrecisionExhausted
from .exactpoly import ExactPolynomial, ValueTable, interpolate


@dataclass(frozen=True)
class ModuliDescriptor:
    genus: int

    def __post_init__(self):
        _check_genus(self.genus)

    @property
    def dimension(self) -> int:
        return 3 * self.genus - 3

    @property
    def index(self) -> int:
        return 2


def _check_genus(g):
    if not isinstance(g, int) or g < 2:
        raise InvalidGenus(f"genus must be an integer >= 2, got {g!r}")


def bareiss_determinant(matrix) -> int:
    """Determinant of a square integer matrix by fraction-free elimination.

    Every intermediate entry is an integer (a minor of the input), and each
    division is exact.
    """
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def verlinde_matrix(g: int, k: int) -> list[list[int]]:
    # Row 0 is all ones; the power-difference rows start at r = 1.
    rows = [[1] * g]
    for r in range(1, g):
        rows.append([(k + 1 + r) ** (2 * s + 2) - (k + 1 - r) ** (2 * s + 2) for s in range(g)])
    return rows


@lru_cache(maxsize=None)
def _factorial_denominator(g: int) -> int:
    den = 1
    for j in range(1, g + 1):
        den *= math.factorial(2 * j)
    return den


def verlinde_det(g: int, k: int) -> int:
    """Exact ``h0(M_C(2, L), Theta^k)`` from the determinant formula.

    >>> [verlinde_det(2, k) for k in range(4)]
    [1, 6, 19, 44]
    """
    _check_genus(g)
    if k < 0:
        raise ValueError("level k must be non-negative")
    num = 2**g * bareiss_determinant(verlinde_matrix(g, k))
    q, rem = divmod(num, _factorial_denominator(g))
    if rem:
        raise NonIntegerResult(f"determinant formula not integral at g={g}, k={k}")
    return q


def default_trig_precision(g: int, k: int) -> int:
    return 64 + math.ceil(4 * g * math.log2(k + 2))


def verlinde_trig(g: int, k: int, precision_bits: int | None = None) -> int:
    """``(k+1)^(g-1) * sum_j (-1)^(j-1) / sin(j pi / (2k+2))^(2g-2)``, rounded.

    The sum is evaluated in ``precision_bits`` of working precision (default
    grows with ``g`` and ``k``).  If the result is not within
    ``2^(-precision_bits/4)`` of an integer, or the estimated rounding error
    is not below that, :class:`PrecisionExhausted` is raised.
    """
    _check_genus(g)
    if k < 0:
        raise ValueError("level k must be non-negative")
    if precision_bits is None:
        precision_bits = default_trig_precision(g, k)
    if precision_bits < 64:
        raise ValueError("precision_bits must be at least 64")
    with mpmath.workprec(precision_bits):
        total = mpmath.mpf(0)
        biggest = mpmath.mpf(0)
        for j in range(1, 2 * k + 2):
            term = 1 / mpmath.sinpi(mpmath.mpf(j) / (2 * k + 2)) ** (2 * g - 2)
            biggest = max(biggest, term)
            total += term if j % 2 else -term
        scale = mpmath.mpf(k + 1) ** (g - 1)
        value = total * scale
        nearest = mpmath.nint(value)
        tolerance = mpmath.ldexp(1, -(precision_bits // 4))
        # Crude rounding estimate: a few ulps per term at the largest term's scale.
        rounding = (2 * k + 2) * biggest * scale * mpmath.ldexp(1, 4 - precision_bits)
        if abs(value - nearest) >= tolerance or rounding >= tolerance:
            raise PrecisionExhausted(
                f"trigonometric sum at g={g}, k={k} is {mpmath.nstr(value, 30)}, "
                f"not within 2^-{precision_bits // 4} of an integer"
            )
        return int(nearest)


def verlinde_numbers(g: int, max_level: int, method: str = "det") -> list[int]:
    if method == "det":
        return [verlinde_det(g, k) for k in range(max_level + 1)]
    if method == "trig":
        return [verlinde_trig(g, k) for k in range(max_level + 1)]
    raise ValueError(f"unknown method {method!r}")


@lru_cache(maxsize=64)
def hilbert_polynomial(g: int) -> ExactPolynomial:
    """Hilbert polynomial of ``(M_C(2, L), Theta)``, of degree ``3g - 3``.

    Interpolates the exact Verlinde numbers at ``k = 0 .. 3g-3`` and checks
    the two surplus levels ``3g-2, 3g-1``, assuming higher cohomology of
    ``Theta^k`` vanishes for ``k >= 0``.
    """
    _check_genus(g)
    dim = 3 * g - 3
    values = ValueTable(tuple(verlinde_det(g, k) for k in range(dim + 3)))
    return interpolate(values, dim)

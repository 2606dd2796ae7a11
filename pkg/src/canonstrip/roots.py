"""Certified complex roots of exact rational polynomials.

The pipeline for :func:`solve`:

1. divide out ``t = -1`` exactly, as often as it is a root;
2. split the rest into squarefree factors (Yun), so every numerical root is
   simple;
3. run Aberth-Ehrlich iteration on each factor, first in float64 to get
   starting values, then in multiprecision;
4. attach an inclusion radius to every approximation ``z_i`` from the
   Weierstrass correction ``W_i = p(z_i) / (lc * prod_{j != i} (z_i - z_j))``:
   the disks ``|z - z_i| <= n |W_i|`` contain all roots, and a disk disjoint
   from the others contains exactly one;
5. repeat at twice the precision and require the maximal real part to agree.

Two exactness upgrades are applied after certification.  A disk whose mirror
image (in the real axis, or in the Serre symmetry line when the polynomial
has one) meets no other disk holds a root fixed by that mirror, so its
imaginary part is exactly zero, or its real part is exactly the centre.
Real roots are also snapped to rationals and verified by exact evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2
import mpmath
import numpy as np

from .errors import NonConvergence, ZeroPolynomial
from .exactpoly import ExactPolynomial, exact_divide_by_root, squarefree_decomposition

PRECISION_CAP = 10**6
_GOLDEN_ANGLE = math.pi * (3 - math.sqrt(5))


@dataclass(frozen=True)
class Root:
    real: mpmath.mpf
    imag: mpmath.mpf
    radius: mpmath.mpf
    multiplicity: int = 1
    exact_real: Fraction | None = None
    is_real: bool = False

    @property
    def value(self) -> mpmath.mpc:
        return mpmath.mpc(self.real, self.imag)

    @property
    def real_radius(self):
        """Error bound on the real part alone (zero when it is exact)."""
        return mpmath.mpf(0) if self.exact_real is not None else self.radius


@dataclass(frozen=True)
class RootAnalysis:
    """All roots of a polynomial, the ``-1`` cluster handled exactly.

    ``roots`` lists the roots of the deflated polynomial only; the root
    ``-1`` appears through ``multiplicity_at_minus_one``.
    """

    degree: int
    multiplicity_at_minus_one: int
    deflated_degree: int
    roots: tuple[Root, ...]
    max_real_part: mpmath.mpf
    max_real_error: mpmath.mpf
    max_real_exact: Fraction | None
    precision: int
    symmetry_centre: Fraction | None = None
    polynomial: ExactPolynomial | None = field(default=None, repr=False, compare=False)

    def all_roots(self, include_minus_one: bool = True) -> list[Root]:
        out = list(self.roots)
        if include_minus_one and self.multiplicity_at_minus_one:
            out.append(
                Root(
                    mpmath.mpf(-1),
                    mpmath.mpf(0),
                    mpmath.mpf(0),
                    self.multiplicity_at_minus_one,
                    Fraction(-1),
                    True,
                )
            )
        return out

    def expanded(self) -> list[Root]:
        """Roots repeated according to multiplicity, ``-1`` included."""
        return [r for r in self.all_roots() for _ in range(r.multiplicity)]

    def to_json(self, digits: int = 20) -> dict:
        return {
            "degree": self.degree,
            "multiplicity_at_minus_one": self.multiplicity_at_minus_one,
            "deflated_degree": self.deflated_degree,
            "roots": [
                {
                    "real": mpmath.nstr(r.real, digits),
                    "imag": mpmath.nstr(r.imag, digits),
                    "radius": mpmath.nstr(r.radius, 5),
                    "multiplicity": r.multiplicity,
                    "exact_real": None if r.exact_real is None else str(r.exact_real),
                }
                for r in self.roots
            ],
            "max_real_part": mpmath.nstr(self.max_real_part, digits),
            "max_real_error": float(self.max_real_error),
            "max_real_exact": None if self.max_real_exact is None else str(self.max_real_exact),
            "precision_bits": self.precision,
        }


def deflate_rational_roots(
    p: ExactPolynomial, candidates: Iterable = (-1,)
) -> tuple[ExactPolynomial, dict[Fraction, int]]:
    """Divide out each candidate root exactly, as many times as it divides ``p``."""
    if p.is_zero():
        raise ZeroPolynomial("cannot deflate the zero polynomial")
    multiplicities = {}
    for c in candidates:
        c = Fraction(c)
        m = 0
        while p.degree > 0:
            p, hit = exact_divide_by_root(p, c)
            if not hit:
                break
            m += 1
        multiplicities[c] = m
    return p, multiplicities


def symmetry_centre(p: ExactPolynomial) -> Fraction | None:
    """The ``x0`` with ``p(2 x0 - t) = +-p(t)``, if ``p`` has one.

    A real polynomial with that property has its roots symmetric under
    ``z -> 2 x0 - conj(z)``; ``x0`` is then the mean of the roots.
    """
    if p.degree < 1:
        return None
    c = p.coefficients
    centre = -c[-2] / (c[-1] * p.degree)
    reflected = p.reflect(-2 * centre)
    if reflected == p or reflected == -p:
        return centre
    return None


# -- numerical kernels ------------------------------------------------------


def _initial_radius(coeffs: Sequence[int]) -> float:
    # Fujiwara's bound: every root has modulus <= 2 max |a_{n-k}/a_n|^(1/k).
    n = len(coeffs) - 1
    lead = abs(coeffs[-1])
    best = 0.0
    for k in range(1, n + 1):
        a = abs(coeffs[n - k])
        if a:
            best = max(best, math.exp((math.log(a) - math.log(lead)) / k))
    return 2 * best if best else 1.0


def _circle_start(n: int, radius: float) -> np.ndarray:
    k = np.arange(n)
    return radius * np.exp(1j * (2 * np.pi * k / n + _GOLDEN_ANGLE / n + 0.4))


def _aberth_float(coeffs: Sequence[int], max_iter: int = 400) -> np.ndarray | None:
    """float64 Aberth iteration, used only to seed the multiprecision run."""
    n = len(coeffs) - 1
    lead = coeffs[-1]
    try:
        c = np.array([Fraction(a, lead) for a in reversed(coeffs)], dtype=float)
    except OverflowError:
        return None
    if not np.all(np.isfinite(c)):
        return None
    dc = np.polyder(c)
    z = _circle_start(n, _initial_radius(coeffs))
    with np.errstate(all="ignore"):
        for _ in range(max_iter):
            pv = np.polyval(c, z)
            dpv = np.polyval(dc, z)
            ratio = pv / dpv
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1)
            inv = 1 / diff
            np.fill_diagonal(inv, 0)
            corr = ratio / (1 - ratio * inv.sum(axis=1))
            corr[~np.isfinite(corr)] = 0
            z = z - corr
            if not np.all(np.isfinite(z)):
                return None
            if np.max(np.abs(corr)) <= 1e-14 * max(1.0, float(np.max(np.abs(z)))):
                break
    return z


def _horner(coeffs, z):
    # Returns p(z), p'(z) for coefficients lowest degree first.
    p = coeffs[-1]
    dp = 0
    for a in reversed(coeffs[:-1]):
        dp = dp * z + p
        p = p * z + a
    return p, dp


def _aberth_mp(coeffs, z: list, max_iter: int) -> None:
    """In-place Aberth sweeps in the current gmpy2 precision."""
    n = len(z)
    prec = gmpy2.get_context().precision
    eps = gmpy2.mpfr(2) ** (8 - prec)
    floor = gmpy2.mpfr(2) ** (-(prec // 4))
    last = gmpy2.inf()
    for _ in range(max_iter):
        biggest = gmpy2.mpfr(0)
        for i in range(n):
            zi = z[i]
            pv, dpv = _horner(coeffs, zi)
            if pv == 0:
                continue
            s = gmpy2.mpc(0)
            for j in range(n):
                if j != i:
                    s += 1 / (zi - z[j])
            ratio = pv / dpv
            corr = ratio / (1 - ratio * s)
            z[i] = zi - corr
            biggest = max(biggest, abs(corr) / max(1, abs(z[i])))
        # Stop at full accuracy, or once the corrections sit at the rounding floor.
        if biggest <= eps or (biggest <= floor and biggest * 4 > last):
            return
        last = biggest


def _inclusion_radii(coeffs, z):
    """Certified radii ``n |W_i|`` with evaluation rounding folded in."""
    n = len(z)
    u = gmpy2.mpfr(2) ** (-gmpy2.get_context().precision)
    abs_coeffs = [abs(a) for a in coeffs]
    radii = []
    for i in range(n):
        zi = z[i]
        pv, _ = _horner(coeffs, zi)
        bound, _ = _horner(abs_coeffs, abs(zi))
        residual = abs(pv) + 8 * (n + 2) * u * bound
        denom = gmpy2.mpfr(1)
        for j in range(n):
            if j != i:
                denom *= abs(zi - z[j])
        if denom == 0:
            radii.append(gmpy2.inf())
            continue
        radii.append(n * residual / denom * (1 + 4 * (n + 2) * u))
    return radii


def _disjoint(z, radii) -> bool:
    n = len(z)
    for i in range(n):
        for j in range(i + 1, n):
            if abs(z[i] - z[j]) <= radii[i] + radii[j]:
                return False
    return True


def _to_mpf(x) -> mpmath.mpf:
    if gmpy2.is_infinite(x):
        return mpmath.inf
    man, exp = x.as_mantissa_exp()
    return mpmath.mpf((int(man), int(exp)))


def _to_mpc(z) -> mpmath.mpc:
    return mpmath.mpc(_to_mpf(z.real), _to_mpf(z.imag))


def _solve_squarefree(int_coeffs: list[int], precision: int, target: float, start=None):
    """Certified simple roots of a squarefree integer polynomial.

    Returns (approximations, radii, precision actually used); the values
    are mpmath numbers carrying the precision they were computed at.
    """
    n = len(int_coeffs) - 1
    if n == 1:
        with mpmath.workprec(precision):
            root = mpmath.mpf(-int_coeffs[0]) / int_coeffs[1]
            return [mpmath.mpc(root)], [mpmath.mpf(0)], precision
    if start is None:
        seed = _aberth_float(int_coeffs)
        if seed is None:
            seed = _circle_start(n, _initial_radius(int_coeffs))
        start = [complex(x) for x in seed]
    prec = precision
    z = list(start)
    radii = []
    while prec <= PRECISION_CAP:
        with gmpy2.context(gmpy2.get_context(), precision=prec):
            lead = gmpy2.mpfr(int_coeffs[-1])
            coeffs = [gmpy2.mpfr(a) / lead for a in int_coeffs]
            z = [_from_mp(x) for x in z]
            _aberth_mp(coeffs, z, max_iter=200 + 4 * n)
            radii = _inclusion_radii(coeffs, z)
            if max(radii) < target and _disjoint(z, radii):
                with mpmath.workprec(prec):
                    return [_to_mpc(x) for x in z], [_to_mpf(r) for r in radii], prec
        prec *= 2
    raise NonConvergence(f"no certified roots below {PRECISION_CAP} bits", partial=(z, radii))


def _signed_man_exp(x) -> tuple[int, int]:
    if not isinstance(x, mpmath.mpf):
        x = mpmath.mpf(x)
    sign, man, exp, _ = x._mpf_
    return (-int(man) if sign else int(man)), int(exp)


def _from_mp(x):
    """Exact conversion of a Python or mpmath complex into the current gmpy2 context."""
    if isinstance(x, (complex, gmpy2.mpc().__class__)):
        return gmpy2.mpc(x)
    parts = []
    for part in (x.real, x.imag):
        man, exp = _signed_man_exp(part)
        parts.append(gmpy2.mul_2exp(gmpy2.mpfr(man), exp))
    return gmpy2.mpc(*parts)


def _disks_meet(a, ra, b, rb) -> bool:
    return abs(a - b) <= ra + rb


def _snap_rational(f_int: list[int], x) -> Fraction | None:
    lead = abs(f_int[-1])
    man, exp = _signed_man_exp(x)
    guess = (Fraction(man) * Fraction(2) ** exp).limit_denominator(lead)
    value = 0
    for a in reversed(f_int):
        value = value * guess + a
    return guess if value == 0 else None


def _numeric_roots(factors, precision, target, starts=None):
    out = []
    used_prec = precision
    for idx, (f, mult) in enumerate(factors):
        ints = f.integer_coefficients()
        start = None if starts is None else starts[idx]
        z, radii, prec = _solve_squarefree(ints, precision, target, start)
        used_prec = max(used_prec, prec)
        out.append((ints, mult, z, radii))
    return out, used_prec


def _assemble(numeric, centre, minus_one, precision) -> list[Root]:
    flat = [(z, r, ints, mult) for ints, mult, zs, rs in numeric for z, r in zip(zs, rs)]
    roots = []
    with mpmath.workprec(precision):
        points = [z for z, _, _, _ in flat]
        radii = [r for _, r, _, _ in flat]
        for i, (z, r, ints, mult) in enumerate(flat):
            others = [k for k in range(len(flat)) if k != i]

            def isolated(image):
                if any(_disks_meet(image, r, points[k], radii[k]) for k in others):
                    return False
                return not (minus_one and abs(image + 1) <= r)

            is_real = isolated(mpmath.conj(z))
            exact_real = None
            if is_real:
                exact_real = _snap_rational(ints, z.real)
            if exact_real is None and centre is not None:
                mirror = 2 * mpmath.mpf(centre.numerator) / centre.denominator - mpmath.conj(z)
                if isolated(mirror):
                    exact_real = centre
            if exact_real is not None:
                real = mpmath.mpf(exact_real.numerator) / exact_real.denominator
            else:
                real = z.real
            imag = mpmath.mpf(0) if is_real else z.imag
            radius = mpmath.mpf(0) if (is_real and exact_real is not None) else r
            roots.append(Root(real, imag, radius, mult, exact_real, is_real))
    roots.sort(key=lambda x: (x.real, x.imag))
    return roots


def _max_real(roots: list[Root], minus_one: int, precision: int):
    with mpmath.workprec(precision):
        return _max_real_at(roots, minus_one)


def _max_real_at(roots, minus_one):
    candidates = [(r.real, r.real_radius, r.exact_real) for r in roots]
    if minus_one:
        candidates.append((mpmath.mpf(-1), mpmath.mpf(0), Fraction(-1)))
    best = max(c[0] for c in candidates)
    error = max(c[1] for c in candidates if c[0] == best or c[0] + c[1] >= best)
    exact = None
    if error == 0:
        exact = next(c[2] for c in candidates if c[0] == best)
    return best, error, exact


def solve(p: ExactPolynomial, target_error: float = 1e-10) -> RootAnalysis:
    """Certified roots and maximal real part of ``p``.

    Parameters
    ----------
    p : ExactPolynomial
        nonzero, degree at least 1.
    target_error : float
        every per-root inclusion radius, and the disagreement between the
        maximal real parts at precisions ``P`` and ``2P``, must fall below
        ``min(target_error, 1e-12)``.

    Raises
    ------
    NonConvergence
        the precision cap of ``10**6`` bits was reached.
    """
    if p.is_zero():
        raise ZeroPolynomial("cannot solve the zero polynomial")
    if p.degree < 1:
        raise ValueError("polynomial must have degree at least 1")
    if target_error <= 0:
        raise ValueError("target_error must be positive")
    tol = min(target_error, 1e-12)

    q, mults = deflate_rational_roots(p, [Fraction(-1)])
    m = mults[Fraction(-1)]
    centre = symmetry_centre(p)
    factors = squarefree_decomposition(q) if q.degree > 0 else []

    max_bits = max((abs(c).bit_length() for f, _ in factors for c in f.integer_coefficients()), default=0)
    deg = max((f.degree for f, _ in factors), default=1)
    precision = max(128, 2 * (max_bits // deg))

    numeric, prec = _numeric_roots(factors, precision, tol)
    roots = _assemble(numeric, centre, m, prec)
    best, err, exact = _max_real(roots, m, prec)
    while True:
        starts = [zs for _, _, zs, _ in numeric]
        numeric2, prec2 = _numeric_roots(factors, 2 * prec, tol, starts)
        roots2 = _assemble(numeric2, centre, m, prec2)
        best2, err2, exact2 = _max_real(roots2, m, prec2)
        numeric, prec, roots = numeric2, prec2, roots2
        if abs(best2 - best) <= tol:
            best, err, exact = best2, err2, exact2
            break
        best, err, exact = best2, err2, exact2
        if prec > PRECISION_CAP:
            raise NonConvergence("maximal real part did not stabilise", partial=roots)

    return RootAnalysis(
        degree=p.degree,
        multiplicity_at_minus_one=m,
        deflated_degree=p.degree - m,
        roots=tuple(roots),
        max_real_part=best,
        max_real_error=err,
        max_real_exact=exact,
        precision=prec,
        symmetry_centre=centre,
        polynomial=p,
    )


def symmetry_residual(analysis: RootAnalysis, index_r: int) -> float:
    """Largest distance between a root and its partner under ``z -> -r - conj(z)``.

    Roots (with multiplicity, ``-1`` included) are matched greedily to the
    nearest unused reflected root.
    """
    roots = [r.value for r in analysis.expanded()]
    available = list(roots)
    worst = mpmath.mpf(0)
    for z in roots:
        image = -index_r - mpmath.conj(z)
        k = min(range(len(available)), key=lambda i: abs(available[i] - image))
        worst = max(worst, abs(available[k] - image))
        available.pop(k)
    return float(worst)


def reconstruct(analysis: RootAnalysis, leading) -> list:
    """Coefficients (lowest first) of ``leading * prod (t - root)`` in multiprecision."""
    if isinstance(leading, Fraction):
        leading = mpmath.mpf(leading.numerator) / leading.denominator
    coeffs = [mpmath.mpc(leading)]
    for r in analysis.expanded():
        z = r.value
        nxt = [mpmath.mpc(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c
            nxt[i] -= c * z
        coeffs = nxt
    return coeffs

"""Canonical line and canonical strip tests on Hilbert polynomial roots.

For a monotone pair ``(X, H)`` of index ``r`` (``-K_X = r H``) and dimension
``n``, Serre duality makes the roots of the Hilbert polynomial symmetric
under ``z -> -r - conj(z)``, i.e. about the vertical line ``Re z = -r/2``.
The three hypotheses ask the real parts to lie in

* CL:  the point ``-r/2``;
* NCS: ``[-r + r/(n+1), -r/(n+1)]`` (endpoints ordered by the sign of ``r``);
* CS:  ``[-r, 0]`` (same ordering).

Intervals are closed.  A verdict is only given when every root whose real
part is not known exactly is further than its error radius from every strip
boundary; otherwise :class:`Indeterminate` is raised.  The canonical line is
a single point, so there a root within its radius of ``-r/2`` counts as on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import Indeterminate
from .roots import RootAnalysis

HYPOTHESES = ("canonical_line", "narrow_strip", "strip")


def strip_bounds(dimension: int, index_r: int) -> dict[str, tuple[Fraction, Fraction]]:
    """Exact closed intervals for the three hypotheses."""
    r = Fraction(index_r)
    centre = -r / 2
    a, b = -r + r / (dimension + 1), -r / (dimension + 1)
    c, d = -r, Fraction(0)
    return {
        "canonical_line": (centre, centre),
        "narrow_strip": (min(a, b), max(a, b)),
        "strip": (min(c, d), max(c, d)),
    }


@dataclass(frozen=True)
class HypothesisVerdict:
    canonical_line: bool
    narrow_strip: bool
    strip: bool
    margins: dict
    strip_bounds: dict

    def passed(self, name: str) -> bool:
        return getattr(self, name)

    def to_json(self, digits: int = 20) -> dict:
        return {
            "canonical_line": self.canonical_line,
            "narrow_strip": self.narrow_strip,
            "strip": self.strip,
            "margins": {k: mpmath.nstr(v, digits) for k, v in self.margins.items()},
            "strip_bounds": {k: [str(lo), str(hi)] for k, (lo, hi) in self.strip_bounds.items()},
        }


def _mp(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def classify(analysis: RootAnalysis, dimension: int, index_r: int) -> HypothesisVerdict:
    """Test every root's real part (the exact ``-1`` cluster included).

    The margin of a hypothesis is the smallest signed distance from a real
    part to the nearest end of its interval: negative when some root lies
    outside, in which case the magnitude is how far outside the worst root is.
    """
    if dimension < 1:
        raise ValueError("dimension must be at least 1")
    bounds = strip_bounds(dimension, index_r)
    roots = analysis.all_roots()
    with mpmath.workprec(max(analysis.precision, 64)):
        margins = {}
        flags = {}
        for name, (lo, hi) in bounds.items():
            worst = mpmath.inf
            for root in roots:
                if root.exact_real is not None:
                    margin = _mp(min(root.exact_real - lo, hi - root.exact_real))
                else:
                    x, radius = root.real, root.radius
                    if lo == hi and abs(x - _mp(lo)) <= radius:
                        # On the line as far as the radius can tell.
                        worst = min(worst, mpmath.mpf(0))
                        continue
                    for edge in {lo, hi}:
                        if abs(x - _mp(edge)) <= radius:
                            raise Indeterminate(
                                f"root with real part {mpmath.nstr(x, 15)} is within "
                                f"{mpmath.nstr(radius, 3)} of the {name} boundary {edge}"
                            )
                    margin = min(x - _mp(lo), _mp(hi) - x)
                worst = min(worst, margin)
            margins[name] = worst
            flags[name] = worst >= 0
    return HypothesisVerdict(
        canonical_line=flags["canonical_line"],
        narrow_strip=flags["narrow_strip"],
        strip=flags["strip"],
        margins=margins,
        strip_bounds=bounds,
    )

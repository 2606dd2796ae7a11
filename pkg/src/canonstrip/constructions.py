"""Fano and Calabi-Yau varieties built from the moduli space ``M_C(2, L)``.

Writing ``h`` for the Hilbert polynomial of ``(M, Theta)`` and ``h_j`` for
``t -> h(t - j)``, each construction's Hilbert polynomial is a short integer
combination of shifts of ``h``:

=========  ===================  ===========  =====
kind       Hilbert polynomial   dimension    index
=========  ===================  ===========  =====
Moduli     h                    3g - 3       2
Fano1      h - h1               3g - 4       1
Fano2      h + h1               3g - 3       1
CY1        h - h2               3g - 4       0
CY2        h - 2 h1 + h2        3g - 5       0
CY3        h + h2               3g - 3       0
CY4        h + h1 + h2          3g - 3       0
CY5        h + 2 h1 + h2        3g - 3       0
CY6        h - h1 + h2          3g - 3       0
=========  ===================  ===========  =====

These come from the Hilbert series: a hyperplane section multiplies it by
``(1 - t)``, a double cover branched in ``2m Theta`` adds ``t^m`` times it,
the cubic in the cone multiplies by ``1 + t + t^2``, the two quadrics in the
join with a line by ``(1 + t)^2``, and the codimension 2 section of the join
with a degree 1 elliptic curve by ``1 - t + t^2``.  The index follows from
adjunction and is re-checked by Serre duality on every result.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import DimensionMismatch, SymmetryViolation
from .exactpoly import ExactPolynomial, linear_combine, shift
from .verlinde import _check_genus, hilbert_polynomial


class ConstructionKind(Enum):
    MODULI = "Moduli"
    FANO1 = "Fano1"
    FANO2 = "Fano2"
    CY1 = "CY1"
    CY2 = "CY2"
    CY3 = "CY3"
    CY4 = "CY4"
    CY5 = "CY5"
    CY6 = "CY6"

    @classmethod
    def parse(cls, name: str) -> "ConstructionKind":
        for kind in cls:
            if kind.value.lower() == name.lower() or kind.name.lower() == name.lower():
                return kind
        raise ValueError(f"unknown construction {name!r}; expected one of {[k.value for k in cls]}")

    def __str__(self):
        return self.value


# Column order of the published table.
TABLE_ORDER = (
    ConstructionKind.FANO1,
    ConstructionKind.FANO2,
    ConstructionKind.MODULI,
    ConstructionKind.CY1,
    ConstructionKind.CY2,
    ConstructionKind.CY3,
    ConstructionKind.CY4,
    ConstructionKind.CY5,
    ConstructionKind.CY6,
)

# kind -> (((coefficient, shift), ...), dimension drop, index)
_TRANSFORMS = {
    ConstructionKind.MODULI: (((1, 0),), 0, 2),
    ConstructionKind.FANO1: (((1, 0), (-1, 1)), 1, 1),
    ConstructionKind.FANO2: (((1, 0), (1, 1)), 0, 1),
    ConstructionKind.CY1: (((1, 0), (-1, 2)), 1, 0),
    ConstructionKind.CY2: (((1, 0), (-2, 1), (1, 2)), 2, 0),
    ConstructionKind.CY3: (((1, 0), (1, 2)), 0, 0),
    ConstructionKind.CY4: (((1, 0), (1, 1), (1, 2)), 0, 0),
    ConstructionKind.CY5: (((1, 0), (2, 1), (1, 2)), 0, 0),
    ConstructionKind.CY6: (((1, 0), (-1, 1), (1, 2)), 0, 0),
}


def expected_dimension(kind: ConstructionKind, g: int) -> int:
    return 3 * g - 3 - _TRANSFORMS[kind][1]


@dataclass(frozen=True)
class PolarisedInvariant:
    """Dimension, monotone index and Hilbert polynomial of ``(X, H)``."""

    dimension: int
    index_r: int
    hilbert: ExactPolynomial

    def serre_dual(self) -> ExactPolynomial:
        """``(-1)^dim * h(-t - r)``; equals ``hilbert`` by Serre duality."""
        reflected = self.hilbert.reflect(self.index_r)
        return reflected if self.dimension % 2 == 0 else -reflected

    def expected_euler_characteristic(self) -> int:
        # Calabi-Yau: h^{0,0} = h^{0,dim} = 1 and nothing in between.
        if self.index_r == 0:
            return 1 + (-1) ** self.dimension
        return 1

    def validate(self):
        if self.hilbert.degree != self.dimension:
            raise DimensionMismatch(
                f"Hilbert polynomial has degree {self.hilbert.degree}, expected {self.dimension}"
            )
        if self.hilbert(0) != self.expected_euler_characteristic():
            raise SymmetryViolation(
                f"chi(O) = {self.hilbert(0)}, expected {self.expected_euler_characteristic()}"
            )
        if self.serre_dual() != self.hilbert:
            raise SymmetryViolation(
                f"Hilbert polynomial is not Serre-symmetric for dimension {self.dimension}, index {self.index_r}"
            )
        return self

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "index": self.index_r,
            "hilbert": self.hilbert.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "PolarisedInvariant":
        return cls(int(data["dimension"]), int(data["index"]), ExactPolynomial.from_json(data["hilbert"]))


def apply(kind: ConstructionKind, g: int, h: ExactPolynomial | None = None) -> PolarisedInvariant:
    """Polarised invariant of construction ``kind`` over the genus ``g`` moduli space.

    ``h`` defaults to :func:`hilbert_polynomial` of ``g``.  The degree and the
    Serre symmetry of the result are verified before returning.
    """
    _check_genus(g)
    if h is None:
        h = hilbert_polynomial(g)
    terms, drop, index = _TRANSFORMS[kind]
    poly = linear_combine((Fraction(c), shift(h, j)) for c, j in terms)
    return PolarisedInvariant(3 * g - 3 - drop, index, poly).validate()


def variety(kind: ConstructionKind | str, g: int) -> PolarisedInvariant:
    if isinstance(kind, str):
        kind = ConstructionKind.parse(kind)
    return apply(kind, g)

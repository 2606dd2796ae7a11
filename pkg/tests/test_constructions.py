import pytest

from canonstrip.constructions import (
    TABLE_ORDER,
    ConstructionKind,
    PolarisedInvariant,
    apply,
    expected_dimension,
    variety,
)
from canonstrip.errors import DimensionMismatch, SymmetryViolation
from canonstrip.exactpoly import ExactPolynomial
from canonstrip.verlinde import hilbert_polynomial

K = ConstructionKind
DROPS = {K.FANO1: 1, K.CY1: 1, K.CY2: 2}


def test_genus_two_examples():
    f1 = apply(K.FANO1, 2)
    assert f1.hilbert == ExactPolynomial([1, 2, 2])
    assert (f1.dimension, f1.index_r) == (2, 1)
    cy1 = apply(K.CY1, 2)
    assert cy1.hilbert == ExactPolynomial([2, 0, 4])
    assert (cy1.dimension, cy1.index_r) == (2, 0)
    m = apply(K.MODULI, 2)
    assert m.hilbert == hilbert_polynomial(2)
    assert (m.dimension, m.index_r) == (3, 2)


def test_parse():
    assert K.parse("cy3") is K.CY3
    assert K.parse("Moduli") is K.MODULI
    assert variety("Fano2", 3) == apply(K.FANO2, 3)
    with pytest.raises(ValueError):
        K.parse("CY7")


def test_table_order():
    assert [k.value for k in TABLE_ORDER] == [
        "Fano1", "Fano2", "Moduli", "CY1", "CY2", "CY3", "CY4", "CY5", "CY6",
    ]


@pytest.mark.parametrize("g", range(2, 13))
@pytest.mark.parametrize("kind", list(K))
def test_invariants(kind, g):
    inv = apply(kind, g)
    assert inv.dimension == 3 * g - 3 - DROPS.get(kind, 0) == expected_dimension(kind, g)
    assert inv.hilbert.degree == inv.dimension
    assert inv.serre_dual() == inv.hilbert
    # chi(O) is 1 for the Fano cases; a Calabi-Yau has 1 + (-1)^dim
    expected = 1 if inv.index_r else 1 + (-1) ** inv.dimension
    assert inv.hilbert(0) == expected


def test_validation_errors():
    h = hilbert_polynomial(3)
    with pytest.raises(DimensionMismatch):
        PolarisedInvariant(5, 2, h).validate()
    with pytest.raises(SymmetryViolation):
        PolarisedInvariant(6, 1, h).validate()


def test_json_round_trip():
    inv = apply(K.CY6, 4)
    doc = inv.to_json()
    assert set(doc) == {"dimension", "index", "hilbert"}
    assert PolarisedInvariant.from_json(doc) == inv

from fractions import Fraction

import pytest

from canonstrip.errors import NotFullDimensional, OriginNotInterior
from canonstrip.exactpoly import ExactPolynomial
from canonstrip.ehrhart import (
    LatticePolytope,
    analyse_polytope,
    bundled_fixtures,
    count_lattice_points,
    ehrhart_polynomial,
    facets_from_vertices,
    load_directory,
    load_polytope,
    parse_polytope,
    scan_maximum,
)

TRIANGLE = LatticePolytope(((-1, -1), (2, -1), (-1, 2)), "P2")
SQUARE = LatticePolytope(((1, 1), (-1, 1), (1, -1), (-1, -1)), "P1xP1")
OCTAHEDRON_DUAL = LatticePolytope(tuple((a, b, c) for a in (-1, 1) for b in (-1, 1) for c in (-1, 1)), "cube")


def test_counts():
    assert count_lattice_points(TRIANGLE, 0) == 1
    assert count_lattice_points(TRIANGLE, 1) == 10
    assert count_lattice_points(SQUARE, 1) == 9
    assert count_lattice_points(SQUARE, 2) == 25
    assert SQUARE.count_interior(1) == 1
    with pytest.raises(ValueError):
        count_lattice_points(SQUARE, -1)


def test_polynomials():
    assert ehrhart_polynomial(TRIANGLE) == ExactPolynomial([1, 3]) * ExactPolynomial([2, 3]) / 2
    assert ehrhart_polynomial(SQUARE) == ExactPolynomial([1, 2]) ** 2
    assert ehrhart_polynomial(OCTAHEDRON_DUAL) == ExactPolynomial([1, 2]) ** 3


def test_triangle_roots():
    res = analyse_polytope(TRIANGLE)
    assert res.analysis.max_real_exact == Fraction(-1, 3)
    reals = sorted(r.exact_real for r in res.analysis.all_roots())
    assert reals == [Fraction(-2, 3), Fraction(-1, 3)]
    assert res.verdict.strip and res.verdict.narrow_strip
    assert analyse_polytope(SQUARE).analysis.max_real_exact == Fraction(-1, 2)


def test_facets():
    assert facets_from_vertices(SQUARE.vertices) == [((-1, 0), 1), ((0, -1), 1), ((0, 1), 1), ((1, 0), 1)]
    assert len(facets_from_vertices(OCTAHEDRON_DUAL.vertices)) == 6


def test_validation():
    with pytest.raises(NotFullDimensional):
        LatticePolytope(((0, 0), (1, 1), (2, 2)))
    with pytest.raises(OriginNotInterior):
        LatticePolytope(((0, 0), (1, 0), (0, 1)))
    with pytest.raises(OriginNotInterior):
        LatticePolytope(((1, 1), (2, 1), (1, 2)))


def test_parse(tmp_path):
    text = "# the P2 triangle\n-1 -1\n2 -1  # corner\n\n-1 2\n"
    p = parse_polytope(text, "tri")
    assert p.vertices == TRIANGLE.vertices and p.name == "tri"
    (tmp_path / "a.txt").write_text(text)
    (tmp_path / "b.txt").write_text("1 1\n-1 1\n1 -1\n-1 -1\n")
    assert load_polytope(tmp_path / "a.txt").name == "a"
    assert [p.name for p in load_directory(tmp_path)] == ["a", "b"]
    with pytest.raises(ValueError):
        parse_polytope("1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n-1 -1 -1 -1\n")


def test_four_dimensional_with_facets():
    verts = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (-1, -1, -1, -1)]
    # simplex whose dual is P^4's moment polytope; facets listed by hand
    facets = [
        ((-1, -1, -1, 4), 1), ((-1, -1, 4, -1), 1), ((-1, 4, -1, -1), 1), ((4, -1, -1, -1), 1), ((-1, -1, -1, -1), 1),
    ]
    text = "\n".join(" ".join(map(str, v)) for v in verts) + "\n"
    text += "\n".join("f " + " ".join(map(str, a)) + f" {b}" for a, b in facets) + "\n"
    p = parse_polytope(text)
    assert p.dimension == 4
    assert count_lattice_points(p, 1) == 6


def test_scan_singleton_and_errors():
    best, name, _ = scan_maximum([SQUARE])
    assert best == -0.5 and name == "P1xP1"
    with pytest.raises(ValueError):
        scan_maximum([])
    with pytest.raises(ValueError):
        scan_maximum([SQUARE, OCTAHEDRON_DUAL])


@pytest.mark.parametrize("dim,count,expected", [(2, 5, Fraction(-1, 3)), (3, 18, Fraction(-1, 4))])
def test_bundled(dim, count, expected):
    polys = bundled_fixtures(dim)
    assert len(polys) == count
    best, name, results = scan_maximum(polys)
    assert abs(best - float(expected)) < 1e-9
    for res in results:
        e = res.ehrhart
        assert e(0) == 1
        assert res.verdict.strip
        for t in (1, 2):
            assert e(-t) == (-1) ** dim * res.polytope.count_interior(t)

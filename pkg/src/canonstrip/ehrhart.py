"""Ehrhart polynomials of lattice polytopes by direct point counting.

For a smooth toric Fano variety the Hilbert polynomial of the anticanonical
bundle is the Ehrhart polynomial of its moment polytope, so these polynomials
go through the same root and strip machinery with index ``r = 1``.

Facets are found exactly from the vertices (dimension at most 3); in higher
dimension the polytope file must list them.  Counting is a bounding-box scan,
which is plenty for the small dilates needed here.

Polytope files are UTF-8 text with one vertex per line as space separated
integers.  ``#`` starts a comment.  A line ``f a_1 ... a_d b`` adds the facet
inequality ``a . x <= b``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from math import gcd
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import NotFullDimensional, OriginNotInterior
from .exactpoly import ExactPolynomial, interpolate
from .hypotheses import HypothesisVerdict, classify
from .roots import RootAnalysis, solve

FANO_INDEX = 1


def _rank(vectors: Sequence[Sequence[int]]) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _normal(points: Sequence[Sequence[int]]) -> tuple[int, ...] | None:
    """Integer normal of the hyperplane through ``d`` points in ``Z^d`` (d <= 3)."""
    d = len(points[0])
    diffs = [[b - a for a, b in zip(points[0], p)] for p in points[1:]]
    if d == 1:
        return (1,)
    if d == 2:
        (x, y), = diffs
        n = (-y, x)
    elif d == 3:
        (a1, a2, a3), (b1, b2, b3) = diffs
        n = (a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)
    else:
        raise ValueError("automatic facet computation needs dimension <= 3")
    if not any(n):
        return None
    g = gcd(*n)
    return tuple(c // g for c in n)


def facets_from_vertices(vertices: Sequence[Sequence[int]]) -> list[tuple[tuple[int, ...], int]]:
    """All facet inequalities ``a . x <= b`` (``a`` primitive) of ``conv(vertices)``."""
    d = len(vertices[0])
    found = set()
    for subset in itertools.combinations(vertices, d):
        n = _normal(subset)
        if n is None:
            continue
        level = sum(a * b for a, b in zip(n, subset[0]))
        values = [sum(a * b for a, b in zip(n, v)) for v in vertices]
        if all(v <= level for v in values):
            found.add((n, level))
        elif all(v >= level for v in values):
            found.add((tuple(-c for c in n), -level))
    return sorted(found)


@dataclass(frozen=True)
class LatticePolytope:
    """Full-dimensional lattice polytope with the origin in its interior."""

    vertices: tuple[tuple[int, ...], ...]
    name: str = ""
    facets: tuple = field(default=(), compare=False)

    def __post_init__(self):
        verts = tuple(tuple(int(x) for x in v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if not verts:
            raise NotFullDimensional("no vertices")
        d = len(verts[0])
        if any(len(v) != d for v in verts):
            raise ValueError("vertices have different lengths")
        if len(verts) < d + 1 or _rank([[b - a for a, b in zip(verts[0], v)] for v in verts[1:]]) < d:
            raise NotFullDimensional(f"vertices do not span a {d}-dimensional polytope")
        facets = self.facets or facets_from_vertices(verts)
        facets = tuple((tuple(int(c) for c in a), int(b)) for a, b in facets)
        object.__setattr__(self, "facets", facets)
        if any(b <= 0 for _, b in facets):
            raise OriginNotInterior("the origin is not strictly inside the polytope")

    @property
    def dimension(self) -> int:
        return len(self.vertices[0])

    def _scan(self, dilate: int, strict: bool) -> int:
        verts = np.array(self.vertices, dtype=np.int64) * dilate
        lo, hi = verts.min(axis=0), verts.max(axis=0)
        axes = [np.arange(a, b + 1) for a, b in zip(lo, hi)]
        grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, self.dimension)
        normals = np.array([a for a, _ in self.facets], dtype=np.int64)
        levels = np.array([b for _, b in self.facets], dtype=np.int64) * dilate
        values = grid @ normals.T
        inside = values < levels if strict else values <= levels
        return int(np.count_nonzero(inside.all(axis=1)))

    def count(self, dilate: int) -> int:
        return count_lattice_points(self, dilate)

    def count_interior(self, dilate: int) -> int:
        if dilate < 1:
            raise ValueError("interior counts need dilate >= 1")
        return self._scan(dilate, strict=True)


def count_lattice_points(p: LatticePolytope, dilate: int) -> int:
    if dilate < 0:
        raise ValueError("dilate must be non-negative")
    if dilate == 0:
        return 1
    return p._scan(dilate, strict=False)


def ehrhart_polynomial(p: LatticePolytope) -> ExactPolynomial:
    """Interpolate counts at dilates ``0..d`` and check dilate ``d + 1``."""
    d = p.dimension
    return interpolate([count_lattice_points(p, k) for k in range(d + 2)], d)


@dataclass(frozen=True)
class PolytopeResult:
    polytope: LatticePolytope
    ehrhart: ExactPolynomial
    analysis: RootAnalysis
    verdict: HypothesisVerdict


def analyse_polytope(p: LatticePolytope, target_error: float = 1e-10) -> PolytopeResult:
    poly = ehrhart_polynomial(p)
    analysis = solve(poly, target_error)
    return PolytopeResult(p, poly, analysis, classify(analysis, p.dimension, FANO_INDEX))


def scan_maximum(polytopes: Iterable[LatticePolytope], target_error: float = 1e-10):
    """Largest maximal real part over ``polytopes``, and the polytope attaining it.

    Returns ``(max_real_part, name, results)``; ties keep the first polytope.
    """
    polytopes = list(polytopes)
    if not polytopes:
        raise ValueError("no polytopes to scan")
    dims = {p.dimension for p in polytopes}
    if len(dims) != 1:
        raise ValueError(f"polytopes of mixed dimensions {sorted(dims)}")
    results = [analyse_polytope(p, target_error) for p in polytopes]
    best = max(results, key=lambda r: r.analysis.max_real_part)
    return best.analysis.max_real_part, best.polytope.name, results


def parse_polytope(text: str, name: str = "") -> LatticePolytope:
    vertices, facets = [], []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "f":
            nums = [int(x) for x in fields[1:]]
            facets.append((tuple(nums[:-1]), nums[-1]))
        else:
            vertices.append(tuple(int(x) for x in fields))
    if vertices and len(vertices[0]) > 3 and not facets:
        raise ValueError("polytopes of dimension > 3 must list their facets ('f a_1 ... a_d b' lines)")
    return LatticePolytope(tuple(vertices), name=name, facets=tuple(facets))


def load_polytope(path) -> LatticePolytope:
    path = Path(path)
    return parse_polytope(path.read_text(encoding="utf-8"), name=path.stem)


def load_directory(path) -> list[LatticePolytope]:
    return [load_polytope(f) for f in sorted(Path(path).glob("*.txt"))]


def bundled_fixtures(dimension: int) -> list[LatticePolytope]:
    """The shipped smooth Fano polytopes of dimension 2 (5 of them) or 3 (18)."""
    folder = resources.files("canonstrip") / "data" / f"dim{dimension}"
    files = sorted((f for f in folder.iterdir() if f.name.endswith(".txt")), key=lambda f: f.name)
    if not files:
        raise FileNotFoundError(f"no bundled fixtures for dimension {dimension}")
    return [parse_polytope(f.read_text(encoding="utf-8"), name=f.name[:-4]) for f in files]

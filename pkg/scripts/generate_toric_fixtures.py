#!/usr/bin/env python3
"""Regenerate the bundled smooth toric Fano polytopes in dimensions 2 and 3.

In dimensions 2 and 3 every smooth toric Fano variety is linked to projective
space by a chain of equivariant blowups and blowdowns through smooth toric
Fano varieties (Sato).  So a breadth-first search from the fan of P^d, moving
by star subdivisions and their inverses and keeping only fans whose
anticanonical support function is strictly convex, finds all of them.  Fans
are deduplicated up to GL(Z) and their moment polytopes
``{m : <m, u> >= -1 for every ray u}`` are written as vertex files.

The expected counts, 5 polygons and 18 polytopes, are checked at the end.

Usage::

    python scripts/generate_toric_fixtures.py [OUTPUT_DIR]
"""

import itertools
import sys
from fractions import Fraction
from pathlib import Path

EXPECTED = {2: 5, 3: 18}
MAX_RAYS = {2: 6, 3: 8}


def det(rows):
    rows = [list(map(Fraction, r)) for r in rows]
    n = len(rows)
    sign = 1
    out = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if rows[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
            sign = -sign
        out *= rows[k][k]
        for i in range(k + 1, n):
            f = rows[i][k] / rows[k][k]
            for j in range(k, n):
                rows[i][j] -= f * rows[k][j]
    return int(sign * out)


def solve(matrix, rhs):
    """Solve ``matrix @ x = rhs`` exactly (square, invertible)."""
    n = len(matrix)
    aug = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for k in range(n):
        piv = next(i for i in range(k, n) if aug[i][k] != 0)
        aug[k], aug[piv] = aug[piv], aug[k]
        for i in range(n):
            if i != k and aug[i][k] != 0:
                f = aug[i][k] / aug[k][k]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[k])]
    return [aug[i][n] / aug[i][i] for i in range(n)]


class Fan:
    def __init__(self, rays, cones, label):
        self.rays = [tuple(r) for r in rays]
        self.cones = {frozenset(c) for c in cones}
        self.label = label
        self.dim = len(self.rays[0])

    def blowups(self):
        faces = set()
        for cone in self.cones:
            for k in range(2, self.dim + 1):
                faces.update(frozenset(f) for f in itertools.combinations(sorted(cone), k))
        for face in sorted(faces, key=sorted):
            new = tuple(sum(self.rays[i][c] for i in face) for c in range(self.dim))
            w = len(self.rays)
            cones = set()
            for cone in self.cones:
                if face <= cone:
                    for u in face:
                        cones.add((cone - {u}) | {w})
                else:
                    cones.add(cone)
            kind = "pt" if len(face) == self.dim else "curve"
            yield Fan(self.rays + [new], cones, f"Bl_{kind}({self.label})")

    def support_functionals(self):
        # m_sigma with <m_sigma, u> = 1 on the rays of each maximal cone.
        out = {}
        for cone in self.cones:
            idx = sorted(cone)
            out[cone] = solve([self.rays[i] for i in idx], [1] * self.dim)
        return out

    def is_fano(self):
        for cone, m in self.support_functionals().items():
            for j, v in enumerate(self.rays):
                if j not in cone and sum(a * b for a, b in zip(m, v)) >= 1:
                    return False
        return True

    def moment_vertices(self):
        verts = {tuple(int(-x) for x in m) for m in self.support_functionals().values()}
        return sorted(verts)

    def invariant(self):
        return (len(self.rays), len(self.cones), tuple(sorted(len(self.star(i)) for i in range(len(self.rays)))))

    def is_complete_smooth(self):
        d = self.dim
        if any(len(c) != d for c in self.cones):
            return False
        if any(abs(det([self.rays[i] for i in sorted(c)])) != 1 for c in self.cones):
            return False
        # Every codimension 1 face lies in exactly two maximal cones.
        walls = {}
        for c in self.cones:
            for f in itertools.combinations(sorted(c), d - 1):
                walls[f] = walls.get(f, 0) + 1
        return all(v == 2 for v in walls.values())

    def star(self, i):
        return [c for c in self.cones if i in c]

    def isomorphic(self, other):
        if self.invariant() != other.invariant():
            return False
        base = sorted(next(iter(self.cones)))
        source = [self.rays[i] for i in base]
        if abs(det(source)) != 1:
            return False
        target_rays = {r: i for i, r in enumerate(other.rays)}
        target_cones = other.cones
        for cone in other.cones:
            for perm in itertools.permutations(sorted(cone)):
                images = [other.rays[i] for i in perm]
                # Linear map M with M(source_k) = images_k, applied to every ray.
                mapped = []
                for r in self.rays:
                    coords = solve([list(col) for col in zip(*source)], r)
                    img = tuple(sum(c * images[k][d] for k, c in enumerate(coords)) for d in range(self.dim))
                    if any(x.denominator != 1 for x in img):
                        break
                    img = tuple(int(x) for x in img)
                    if img not in target_rays:
                        break
                    mapped.append(target_rays[img])
                else:
                    if {frozenset(mapped[i] for i in c) for c in self.cones} == target_cones:
                        return True
        return False


def projective_space(dim):
    rays = [tuple(int(i == j) for j in range(dim)) for i in range(dim)] + [tuple([-1] * dim)]
    return Fan(rays, itertools.combinations(range(dim + 1), dim), f"P{dim}")


def blowdowns(fan):
    """Every equivariant blowdown of ``fan`` that gives a smooth complete fan."""
    d = fan.dim
    for w in range(len(fan.rays)):
        star = fan.star(w)
        link = sorted(set().union(*star) - {w})
        for k in range(2, d + 1):
            for tau in itertools.combinations(link, k):
                total = tuple(sum(fan.rays[i][c] for i in tau) for c in range(d))
                if total != fan.rays[w]:
                    continue
                cones = {c for c in fan.cones if w not in c}
                for c in star:
                    merged = (c - {w}) | set(tau)
                    if len(merged) == d:
                        cones.add(frozenset(merged))
                keep = [i for i in range(len(fan.rays)) if i != w]
                relabel = {old: new for new, old in enumerate(keep)}
                cand = Fan([fan.rays[i] for i in keep], [{relabel[i] for i in c} for c in cones],
                           f"Bl^-1({fan.label})")
                if cand.is_complete_smooth():
                    yield cand


def fano_fans(dim):
    """Breadth-first search from P^dim through Fano blowups and blowdowns."""
    start = projective_space(dim)
    found = [start]
    frontier = [start]
    while frontier:
        nxt = []
        for fan in frontier:
            for cand in itertools.chain(fan.blowups(), blowdowns(fan)):
                if len(cand.rays) > MAX_RAYS[dim] or not cand.is_fano():
                    continue
                if not any(cand.isomorphic(f) for f in found):
                    found.append(cand)
                    nxt.append(cand)
        frontier = nxt
    return found


def write(fans, directory: Path, dim: int):
    directory.mkdir(parents=True, exist_ok=True)
    for old in directory.glob("*.txt"):
        old.unlink()
    fans = sorted(fans, key=lambda f: (len(f.rays), f.label))
    for k, fan in enumerate(fans):
        name = f"d{dim}_{k:02d}"
        lines = [
            f"# smooth toric Fano {dim}-fold: {fan.label}",
            "# moment polytope of the anticanonical bundle, one vertex per line",
            "# fan rays: " + " ".join("(" + ",".join(map(str, r)) + ")" for r in fan.rays),
        ]
        lines += [" ".join(map(str, v)) for v in fan.moment_vertices()]
        (directory / f"{name}.txt").write_text("\n".join(lines) + "\n")


def main(argv):
    out = Path(argv[1]) if len(argv) > 1 else Path(__file__).resolve().parents[1] / "src/canonstrip/data"
    dim2 = fano_fans(2)
    dim3 = fano_fans(3)
    for dim, fans in ((2, dim2), (3, dim3)):
        print(f"dimension {dim}: {len(fans)} smooth Fano fans", file=sys.stderr)
        if len(fans) != EXPECTED[dim]:
            raise SystemExit(f"expected {EXPECTED[dim]} in dimension {dim}")
        write(fans, out / f"dim{dim}", dim)


if __name__ == "__main__":
    main(sys.argv)

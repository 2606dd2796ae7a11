"""
Smooth toric Fano varieties in dimensions 2 and 3
=================================================

For a smooth toric Fano the anticanonical Hilbert polynomial is the Ehrhart
polynomial of the moment polytope.  Count lattice points, interpolate, and
check every root against the strip [-1, 0].
"""

from canonstrip.ehrhart import LatticePolytope, bundled_fixtures, ehrhart_polynomial, scan_maximum

# The moment polytope of P^2: 10 lattice points, 1 interior.
tri = LatticePolytope(((-1, -1), (2, -1), (-1, 2)), "P2")
print([tri.count(k) for k in range(5)], "interior:", tri.count_interior(1))
print("L(t) =", ehrhart_polynomial(tri))

for dim in (2, 3):
    best, name, results = scan_maximum(bundled_fixtures(dim))
    print(f"\ndimension {dim}: {len(results)} polytopes, maximal real part {float(best):.10f} ({name})")
    for res in results:
        print(f"  {res.polytope.name}  {float(res.analysis.max_real_part):+.6f}  "
              f"CS {'yes' if res.verdict.strip else 'no '}  NCS {'yes' if res.verdict.narrow_strip else 'no'}")

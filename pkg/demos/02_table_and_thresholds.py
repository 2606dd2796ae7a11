"""
Where the strip hypotheses break
================================

Compute the maximal real part of the Hilbert polynomial roots for every
construction up to genus 15, then locate the genera where the narrow strip,
the strip and the embedded canonical line stop holding.

Takes around half a minute on one core.
"""

import numpy as np

from canonstrip.constructions import TABLE_ORDER, ConstructionKind
from canonstrip.hypotheses import strip_bounds
from canonstrip.report import check_thresholds, generate_table

G_MAX = 15
table = generate_table(2, G_MAX)

# One float row per genus, in the usual column order.
values = np.array([[float(c.max_real_part) for c in row] for row in table.rows])
genera = np.arange(2, G_MAX + 1)
print("g   " + "  ".join(f"{k.value:>9s}" for k in TABLE_ORDER))
for g, row in zip(genera, values):
    print(f"{g:<3d} " + "  ".join(f"{x:9.5f}" for x in row))

# The moduli column against its narrow-strip ceiling -r/(dim + 1).
moduli = values[:, TABLE_ORDER.index(ConstructionKind.MODULI)]
ceiling = np.array([float(strip_bounds(3 * g - 3, 2)["narrow_strip"][1]) for g in genera])
print("\nmoduli max real part minus narrow-strip ceiling:")
print(np.round(moduli - ceiling, 4))
print("first genus above the ceiling:", genera[np.argmax(moduli > ceiling)])
print("first genus above zero:       ", genera[np.argmax(moduli > 0)])

print()
for claim in check_thresholds(G_MAX):
    print(claim.line())

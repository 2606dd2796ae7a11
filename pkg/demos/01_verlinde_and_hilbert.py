"""
Verlinde numbers and the Hilbert polynomial of the moduli space
===============================================================

Walk through genus 2 and genus 4 by hand: exact Verlinde numbers from the
integer determinant, the same numbers from the trigonometric sum, and the
Hilbert polynomial they determine.
"""

from canonstrip import constructions, verlinde
from canonstrip.exactpoly import shift

# Genus 2: the moduli space is a threefold, so 4 values pin down h.
values = verlinde.verlinde_numbers(2, 5)
print("genus 2, levels 0..5:", values)
print("trig sum agrees:     ", verlinde.verlinde_numbers(2, 5, "trig"))

h = verlinde.hilbert_polynomial(2)
print("h(t) =", h)
print("h(-1) =", h(-1), "  (t = -1 is a root)")

# Serre duality: h(t) = (-1)^3 h(-2 - t), so the values at negative
# arguments mirror the positive ones.
print([h(k) for k in range(4)], [-h(-2 - k) for k in range(4)])

# The derived varieties are shift combinations of h.  A hyperplane
# section, for instance, has Hilbert polynomial h(t) - h(t - 1).
print("h - h(t-1) =", h - shift(h, 1))
for kind in constructions.TABLE_ORDER:
    inv = constructions.apply(kind, 2)
    print(f"{kind.value:7s} dim {inv.dimension}  r = {inv.index_r}   {inv.hilbert}")

# Genus 4 is a ninefold; the coefficients already need big rationals.
h4 = verlinde.hilbert_polynomial(4)
print("\ngenus 4 leading coefficient:", h4.leading)
print("genus 4 values:", [int(h4(k)) for k in range(6)])

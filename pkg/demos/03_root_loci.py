"""
Root loci of the moduli Hilbert polynomials
===========================================

Emit every root for g = 2..20 (the figure data), and look at how the root
cloud spreads.  If matplotlib is around, the picture is saved as
``root_loci.png``; the root at -1 is left out, as usual.
"""

import numpy as np

from canonstrip.report import figure_records

records = figure_records(2, 20)
data = np.array([(g, float(x), float(y), m) for g, x, y, m, deflated in records if not deflated])
genus, re, im, mult = data.T

for g in (5, 10, 15, 20):
    sel = genus == g
    print(f"g={g:2d}: {int(mult[sel].sum()):2d} roots off -1, real parts in "
          f"[{re[sel].min():.4f}, {re[sel].max():.4f}], |imag| <= {np.abs(im[sel]).max():.4f}")

# Every root sits symmetrically about Re = -1.
print("symmetry about -1:", np.allclose(np.sort(re + 1), np.sort(-(re + 1)), atol=1e-12))

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("matplotlib not installed, skipping the plot")
else:
    fig, ax = plt.subplots(figsize=(6, 6))
    sc = ax.scatter(re, im, c=genus, s=6, cmap="viridis")
    ax.axvline(-1, lw=0.5, color="grey")
    fig.colorbar(sc, label="genus")
    ax.set_xlabel("Re t")
    ax.set_ylabel("Im t")
    fig.savefig("root_loci.png", dpi=150)
    print("wrote root_loci.png")

"""Hilbert polynomial roots of moduli of rank 2 bundles on curves, and the canonical strip."""

__version__ = "0.1.0"

from .constructions import TABLE_ORDER, ConstructionKind, PolarisedInvariant, apply, variety
from .ehrhart import LatticePolytope, bundled_fixtures, count_lattice_points, ehrhart_polynomial, scan_maximum
from .exactpoly import ExactPolynomial, ValueTable, exact_divide_by_root, interpolate, linear_combine, shift
from .hypotheses import HypothesisVerdict, classify, strip_bounds
from .roots import RootAnalysis, deflate_rational_roots, solve, symmetry_residual
from .verlinde import hilbert_polynomial, verlinde_det, verlinde_trig

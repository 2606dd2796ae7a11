"""End-to-end runs: the table of maximal real parts, figure data, threshold claims.

Work items are ``(genus, construction)`` pairs.  With ``jobs > 1`` they are
dispatched to a process pool; results are always re-ordered by genus and
column before anything is emitted, so output does not depend on ``jobs``.
"""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .constructions import TABLE_ORDER, ConstructionKind, PolarisedInvariant, apply, expected_dimension
from .errors import CanonStripError
from .hypotheses import HypothesisVerdict, classify
from .roots import RootAnalysis, solve

DIGITS = 20
DEFAULT_TARGET_ERROR = 1e-10
MAX_GENUS = 40

# Formula for the dimension footer of the table, per column.
DIMENSION_LABELS = {kind: f"3g-{3 + (3 - expected_dimension(kind, 2))}" for kind in TABLE_ORDER}


def format_real(x) -> str:
    """Decimal string with :data:`DIGITS` significant digits."""
    if isinstance(x, Fraction):
        with mpmath.workprec(256):
            x = mpmath.mpf(x.numerator) / x.denominator
    return mpmath.nstr(x, DIGITS, strip_zeros=False)


@dataclass(frozen=True)
class CellResult:
    genus: int
    kind: ConstructionKind
    invariant: PolarisedInvariant | None
    analysis: RootAnalysis | None
    verdict: HypothesisVerdict | None
    failure: str | None = None

    @property
    def max_real_part(self):
        return None if self.analysis is None else self.analysis.max_real_part


@lru_cache(maxsize=512)
def analyse(genus: int, kind: ConstructionKind, target_error: float = DEFAULT_TARGET_ERROR) -> CellResult:
    """Hilbert polynomial, certified roots and verdict for one variety."""
    inv = apply(kind, genus)
    analysis = solve(inv.hilbert, target_error)
    verdict = classify(analysis, inv.dimension, inv.index_r)
    return CellResult(genus, kind, inv, analysis, verdict)


def _cell(item) -> CellResult:
    genus, kind, target_error = item
    try:
        return analyse(genus, kind, target_error)
    except CanonStripError as exc:
        return CellResult(genus, kind, None, None, None, f"{type(exc).__name__}: {exc}")


def _check_range(g_min: int, g_max: int):
    if not (2 <= g_min <= g_max <= MAX_GENUS):
        raise ValueError(f"need 2 <= g_min <= g_max <= {MAX_GENUS}, got {g_min}..{g_max}")


def run_cells(items, jobs: int | None = None) -> list[CellResult]:
    items = list(items)
    jobs = jobs or os.cpu_count() or 1
    if jobs <= 1 or len(items) <= 1:
        results = [_cell(it) for it in items]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_cell, items, chunksize=len(TABLE_ORDER)))
    order = {kind: i for i, kind in enumerate(TABLE_ORDER)}
    return sorted(results, key=lambda c: (c.genus, order[c.kind]))


@dataclass(frozen=True)
class TableReport:
    rows: tuple[tuple[CellResult, ...], ...]
    target_error: float

    def value(self, genus: int, kind: ConstructionKind):
        for row in self.rows:
            if row[0].genus == genus:
                return next(c for c in row if c.kind == kind)
        raise KeyError(genus)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["g"] + [k.value for k in TABLE_ORDER])
        for row in self.rows:
            writer.writerow(
                [row[0].genus]
                + [format_real(c.max_real_part) if c.failure is None else f"error: {c.failure}" for c in row]
            )
        writer.writerow(["dim"] + [DIMENSION_LABELS[k] for k in TABLE_ORDER])
        return buf.getvalue()

    def to_json(self) -> str:
        rows = []
        for row in self.rows:
            cells = {}
            for c in row:
                if c.failure is not None:
                    cells[c.kind.value] = {"error": c.failure}
                    continue
                a = c.analysis
                cells[c.kind.value] = {
                    "max_real_part": format_real(a.max_real_part),
                    "certified_error": float(a.max_real_error),
                    "exact": None if a.max_real_exact is None else str(a.max_real_exact),
                    "dimension": c.invariant.dimension,
                }
            rows.append({"genus": row[0].genus, "values": cells})
        doc = {
            "columns": [k.value for k in TABLE_ORDER],
            "target_error": self.target_error,
            "rows": rows,
            "dimension": {k.value: DIMENSION_LABELS[k] for k in TABLE_ORDER},
        }
        return json.dumps(doc, indent=2) + "\n"


def generate_table(g_min: int, g_max: int, target_error: float = DEFAULT_TARGET_ERROR, jobs: int | None = None) -> TableReport:
    _check_range(g_min, g_max)
    items = [(g, kind, target_error) for g in range(g_min, g_max + 1) for kind in TABLE_ORDER]
    cells = run_cells(items, jobs)
    width = len(TABLE_ORDER)
    rows = tuple(tuple(cells[i : i + width]) for i in range(0, len(cells), width))
    return TableReport(rows, target_error)


def figure_records(g_min: int, g_max: int, target_error: float = DEFAULT_TARGET_ERROR, jobs: int | None = None):
    """Root records ``(genus, real, imag, multiplicity, deflated)`` of the moduli polynomials.

    The exact root ``-1`` is one record with ``deflated=True``; plotters that
    follow the usual picture drop it.
    """
    _check_range(g_min, g_max)
    items = [(g, ConstructionKind.MODULI, target_error) for g in range(g_min, g_max + 1)]
    records = []
    for cell in run_cells(items, jobs):
        if cell.failure is not None:
            raise CanonStripError(f"genus {cell.genus}: {cell.failure}")
        a = cell.analysis
        for r in a.roots:
            records.append((cell.genus, r.real, r.imag, r.multiplicity, False))
        if a.multiplicity_at_minus_one:
            records.append((cell.genus, mpmath.mpf(-1), mpmath.mpf(0), a.multiplicity_at_minus_one, True))
    return records


def emit_figure_data(g_min: int, g_max: int, target_error: float = DEFAULT_TARGET_ERROR, jobs: int | None = None, fmt: str = "csv") -> str:
    records = figure_records(g_min, g_max, target_error, jobs)
    if fmt == "json":
        return json.dumps(
            [
                {"genus": g, "real": format_real(x), "imag": format_real(y), "multiplicity": m, "deflated": d}
                for g, x, y, m, d in records
            ],
            indent=1,
        ) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["genus", "real", "imag", "multiplicity", "deflated"])
    for g, x, y, m, d in records:
        writer.writerow([g, format_real(x), format_real(y), m, int(d)])
    return buf.getvalue()


# (label, construction, hypothesis, first failing genus)
THRESHOLD_CLAIMS = (
    ("NCS(Moduli)", ConstructionKind.MODULI, "narrow_strip", 8),
    ("CS(Moduli)", ConstructionKind.MODULI, "strip", 10),
    ("CL(CY1)", ConstructionKind.CY1, "canonical_line", 11),
)


@dataclass(frozen=True)
class ThresholdClaim:
    label: str
    threshold: int
    statuses: dict
    confirmed: bool

    def line(self) -> str:
        verdict = "PASS" if self.confirmed else "FAIL"
        observed = " ".join(f"{g}:{'+' if s else ('-' if s is not None else '?')}" for g, s in sorted(self.statuses.items()))
        return f"{verdict}  {self.label} holds for g < {self.threshold} and fails for g >= {self.threshold}  [{observed}]"


def check_thresholds(g_max: int = 15, target_error: float = DEFAULT_TARGET_ERROR, jobs: int | None = None) -> list[ThresholdClaim]:
    """Recheck where each hypothesis starts failing, for genus 2 up to ``g_max``."""
    kinds = sorted({kind for _, kind, _, _ in THRESHOLD_CLAIMS}, key=TABLE_ORDER.index)
    items = [(g, kind, target_error) for g in range(2, g_max + 1) for kind in kinds]
    cells = {(c.genus, c.kind): c for c in run_cells(items, jobs)}
    claims = []
    for label, kind, hypothesis, threshold in THRESHOLD_CLAIMS:
        statuses = {}
        for g in range(2, g_max + 1):
            cell = cells[(g, kind)]
            statuses[g] = None if cell.verdict is None else cell.verdict.passed(hypothesis)
        # A claim is only confirmed if the range reaches the failing side.
        confirmed = g_max >= threshold and all(statuses[g] is (g < threshold) for g in statuses)
        claims.append(ThresholdClaim(label, threshold, statuses, confirmed))
    return claims

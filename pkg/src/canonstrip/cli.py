"""Command line interface.

Data goes to standard output, diagnostics to standard error.  Exit codes:
0 success, 1 usage error, 2 computation error, 3 a threshold claim did not
reproduce.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import __version__
from .constructions import ConstructionKind, apply
from .ehrhart import analyse_polytope, bundled_fixtures, load_directory, load_polytope
from .errors import CanonStripError
from .exactpoly import ExactPolynomial
from .hypotheses import classify
from .report import (
    DEFAULT_TARGET_ERROR,
    check_thresholds,
    emit_figure_data,
    format_real,
    generate_table,
)
from .roots import solve
from .verlinde import verlinde_numbers

EXIT_USAGE = 1
EXIT_COMPUTATION = 2
EXIT_THRESHOLD = 3

log = logging.getLogger("canonstrip")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _kind(name: str) -> ConstructionKind:
    try:
        return ConstructionKind.parse(name)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(doc):
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def cmd_verlinde(args):
    for value in verlinde_numbers(args.genus, args.max_level, args.method):
        print(value)


def cmd_hilbert(args):
    inv = apply(args.construction, args.genus)
    doc = {"genus": args.genus, "construction": args.construction.value}
    doc.update(inv.to_json())
    _emit(doc)


def cmd_roots(args):
    if args.polynomial:
        with open(args.polynomial, encoding="utf-8") as fh:
            poly = ExactPolynomial.from_json(json.load(fh))
        doc = {}
    else:
        _require_genus(args)
        poly = apply(args.construction, args.genus).hilbert
        doc = {"genus": args.genus, "construction": args.construction.value}
    analysis = solve(poly, args.target_error)
    doc.update(analysis.to_json())
    _emit(doc)


def cmd_check(args):
    inv = apply(args.construction, args.genus)
    analysis = solve(inv.hilbert, args.target_error)
    verdict = classify(analysis, inv.dimension, inv.index_r)
    doc = {
        "genus": args.genus,
        "construction": args.construction.value,
        "dimension": inv.dimension,
        "index": inv.index_r,
        "max_real_part": format_real(analysis.max_real_part),
        "certified_error": float(analysis.max_real_error),
    }
    doc.update(verdict.to_json())
    _emit(doc)


def cmd_table(args):
    report = generate_table(args.genus_min, args.genus_max, args.target_error, args.jobs)
    sys.stdout.write(report.to_csv() if args.format == "csv" else report.to_json())


def cmd_plot_data(args):
    sys.stdout.write(emit_figure_data(args.genus_min, args.genus_max, args.target_error, args.jobs, args.format))


def cmd_thresholds(args):
    claims = check_thresholds(args.genus_max, args.target_error, args.jobs)
    for claim in claims:
        print(claim.line())
    return 0 if all(c.confirmed for c in claims) else EXIT_THRESHOLD


def cmd_ehrhart(args):
    if args.scan:
        polytopes = load_directory(args.scan)
    elif args.bundled:
        polytopes = bundled_fixtures(args.bundled)
    else:
        polytopes = [load_polytope(args.polytope)]
    results = []
    best = None
    for p in polytopes:
        log.info("polytope %s", p.name)
        res = analyse_polytope(p, args.target_error)
        entry = {
            "name": p.name,
            "dimension": p.dimension,
            "ehrhart": res.ehrhart.to_json(),
            "max_real_part": format_real(res.analysis.max_real_part),
            "certified_error": float(res.analysis.max_real_error),
        }
        entry.update(res.verdict.to_json())
        results.append(entry)
        if best is None or res.analysis.max_real_part > best[1]:
            best = (p.name, res.analysis.max_real_part)
    doc = {"polytopes": results}
    if len(results) > 1:
        doc["maximum"] = {"name": best[0], "max_real_part": format_real(best[1])}
    _emit(doc)


def _require_genus(args):
    if args.genus is None or args.construction is None:
        raise _UsageError("--genus and --construction are required unless --polynomial is given")


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="canonstrip", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true", help="progress messages on stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def genus(p, required=True):
        p.add_argument("--genus", type=int, required=required)

    def construction(p, required=True):
        p.add_argument("--construction", type=_kind, required=required, metavar="KIND",
                       help="Moduli, Fano1, Fano2, CY1 ... CY6")

    def target(p):
        p.add_argument("--target-error", type=float, default=DEFAULT_TARGET_ERROR)

    def genus_range(p):
        p.add_argument("--genus-min", type=int, required=True)
        p.add_argument("--genus-max", type=int, required=True)

    def jobs(p):
        p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)

    p = sub.add_parser("verlinde", help="Verlinde numbers for levels 0..K")
    genus(p)
    p.add_argument("--max-level", type=int, required=True)
    p.add_argument("--method", choices=("det", "trig"), default="det")
    p.set_defaults(func=cmd_verlinde)

    p = sub.add_parser("hilbert", help="Hilbert polynomial of a construction, as JSON")
    genus(p)
    construction(p)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("roots", help="certified roots of a Hilbert polynomial, as JSON")
    genus(p, required=False)
    construction(p, required=False)
    p.add_argument("--polynomial", help="JSON file {\"coefficients\": [...]} instead of a construction")
    target(p)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("check", help="canonical line / strip verdicts, as JSON")
    genus(p)
    construction(p)
    target(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("table", help="maximal real parts for a range of genera")
    genus_range(p)
    target(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    jobs(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("plot-data", help="all roots of the moduli Hilbert polynomials")
    genus_range(p)
    target(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    jobs(p)
    p.set_defaults(func=cmd_plot_data)

    p = sub.add_parser("thresholds", help="recheck the genus thresholds of the three hypotheses")
    p.add_argument("--genus-max", type=int, default=15)
    target(p)
    jobs(p)
    p.set_defaults(func=cmd_thresholds)

    p = sub.add_parser("ehrhart", help="Ehrhart polynomial, roots and verdicts of lattice polytopes")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--polytope", help="vertex file")
    src.add_argument("--scan", metavar="DIR", help="every *.txt polytope in DIR")
    src.add_argument("--bundled", type=int, choices=(2, 3), help="shipped smooth Fano fixtures")
    target(p)
    p.set_defaults(func=cmd_ehrhart)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(name)s: %(message)s")
    try:
        return args.func(args) or 0
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"canonstrip: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"canonstrip: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CanonStripError as exc:
        print(f"canonstrip: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION


if __name__ == "__main__":
    sys.exit(main())

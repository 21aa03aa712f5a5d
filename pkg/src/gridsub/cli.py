"""Command-line front end: ``gridsub <subcommand> ...``.

Every invocation prints one JSON document (or CSV with ``--format csv``).
Exit codes: 0 success, 1 failed verification, 2 budget exhausted, 64 usage.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time

from . import __version__
from .closedform import VerificationFailure, all_closed_form, bimonotone_closed_form, derive_p, derive_q
from .enumeration import (
    ALL_PAIRS,
    PAPER_LITERAL,
    PRIMITIVE_ONLY,
    STRICT,
    BudgetExceeded,
    Options,
    count_full_triangulations,
    count_subdivisions,
    list_subdivisions,
)
from .flips import DescentViolation, bfs_count, canonical_triangulation
from .geometry import Configuration
from .render import render_svg
from .report import Cache, CountReport, dumps, request_key, to_csv
from .sequences import IdentityViolation, delannoy_central, schroeder, schroeder_path_oracle
from .tworow import count_two_row_all, count_two_row_bimonotone
from .verify import (
    Discrepancy,
    cross_validate,
    delannoy_suite,
    descent_suite,
    oracle_equivalence_suite,
    schroeder_suite,
    tables_suite,
)

EXIT_OK, EXIT_FAILED, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 64

log = logging.getLogger("gridsub")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _modes(mode: str) -> list[str]:
    return ["bimonotone", "all"] if mode == "both" else [mode]


def _common(p: argparse.ArgumentParser, modes=True, conventions=False):
    if modes:
        p.add_argument("--mode", choices=["bimonotone", "all", "both"], default="both")
    if conventions:
        p.add_argument("--edge-interaction", choices=[STRICT, PAPER_LITERAL], default=STRICT)
        p.add_argument("--candidates", choices=[PRIMITIVE_ONLY, ALL_PAIRS], default=PRIMITIVE_ONLY)
        p.add_argument("--node-budget", type=_positive, default=None,
                       help="search-node budget (default: $GRIDSUB_BUDGET_NODES or 1e10)")
        p.add_argument("--time-budget", type=float, default=None, help="seconds")
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--cache", default=None, help="JSON file of previously computed counts")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gridsub", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("count-grid", help="count subdivisions of a cols x rows grid by enumeration")
    p.add_argument("--cols", type=_positive, required=True)
    p.add_argument("--rows", type=_positive, required=True)
    _common(p, conventions=True)

    p = sub.add_parser("count-two-row", help="count subdivisions of P(top, bottom)")
    p.add_argument("--top", type=_positive, required=True)
    p.add_argument("--bottom", type=_positive, required=True)
    p.add_argument("--method", choices=["recursion", "closed-form", "enumeration"], default="recursion")
    _common(p, conventions=True)

    p = sub.add_parser("count-triangulations", help="count full-point triangulations of a grid")
    p.add_argument("--cols", type=_positive, required=True)
    p.add_argument("--rows", type=_positive, required=True)
    p.add_argument("--method", choices=["flip-bfs", "enumeration"], default="flip-bfs")
    p.add_argument("--node-budget", type=_positive, default=None)
    _common(p)

    p = sub.add_parser("sequences", help="Schroeder and central Delannoy numbers")
    p.add_argument("--name", choices=["schroeder", "schroeder-paths", "delannoy"], required=True)
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--format", choices=["json"], default="json")

    p = sub.add_parser("poly", help="coefficients of P_n (bimonotone) or Q_n (all)")
    p.add_argument("--kind", choices=["P", "Q"], required=True)
    p.add_argument("--n", type=_positive, required=True)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True,
                   choices=["schroeder", "delannoy-conjecture", "tables", "oracle-equivalence", "descent"])
    p.add_argument("--n-max", type=_positive, default=20)
    p.add_argument("--threads", type=_positive, default=1)

    p = sub.add_parser("cross-validate", help="compare all methods on 2 x n grids")
    p.add_argument("--n-max", type=_positive, default=6)
    p.add_argument("--enumeration-max", type=_nonneg, default=6)
    p.add_argument("--threads", type=_positive, default=1)

    p = sub.add_parser("render", help="write an SVG of a subdivision or triangulation")
    p.add_argument("--cols", type=_positive, required=True)
    p.add_argument("--rows", type=_positive, required=True)
    p.add_argument("--two-row", action="store_true", help="read cols/rows as top/bottom of P(top, bottom)")
    p.add_argument("--canonical-triangulation", action="store_true")
    p.add_argument("--index", type=_nonneg, default=0, help="which subdivision in enumeration order")
    p.add_argument("--mode", choices=["bimonotone", "all"], default="all")
    p.add_argument("--out", required=True)
    return parser


def _options(args) -> Options:
    return Options(edge_interaction=args.edge_interaction, candidates=args.candidates,
                   node_budget=args.node_budget, time_budget=args.time_budget, threads=args.threads)


def _timed_report(cache: Cache | None, configuration: str, mode: str, method: str,
                  conventions: dict, compute) -> CountReport:
    key = request_key(configuration, mode, method, conventions)
    start = time.perf_counter()
    hit = cache.get(key) if cache else None
    if hit is not None:
        log.debug("cache hit for %s", key)
        count = hit
    else:
        count = str(compute())
        if cache:
            cache.put(key, count)
    elapsed = (time.perf_counter() - start) * 1000
    return CountReport(configuration, mode, method, count, conventions, round(elapsed, 3))


def _emit_reports(reports: list[CountReport], fmt: str) -> None:
    if fmt == "csv":
        sys.stdout.write(to_csv(reports))
    else:
        sys.stdout.write(dumps({"reports": [r.to_dict() for r in reports]}) + "\n")


def _two_row_count(args, mode):
    bim = mode == "bimonotone"
    m, n = args.top, args.bottom
    if args.method == "recursion":
        value = count_two_row_bimonotone(m, n) if bim else count_two_row_all(m, n)
    elif args.method == "closed-form":
        value = bimonotone_closed_form(m, n) if bim else all_closed_form(m, n)
    else:
        return count_subdivisions(Configuration.two_row(m, n), bim, _options(args))
    if getattr(value, "denominator", 1) != 1:
        raise UsageError(f"P({m},{n}) is degenerate (value {value})")
    return int(value)


def run(args) -> int:
    cmd = args.command
    cache = Cache(args.cache) if getattr(args, "cache", None) else None

    if cmd == "count-grid":
        cfg = Configuration.grid(args.cols, args.rows)
        if not cfg.is_full_dimensional:
            raise UsageError(f"{cfg.describe()} is degenerate; need at least 2 columns and 2 rows")
        opts = _options(args)
        reports = [_timed_report(cache, cfg.describe(), mode, "enumeration", opts.conventions(),
                                 lambda mode=mode: count_subdivisions(cfg, mode == "bimonotone", opts))
                   for mode in _modes(args.mode)]
        _emit_reports(reports, args.format)
    elif cmd == "count-two-row":
        cfg = Configuration.two_row(args.top, args.bottom)
        conv = _options(args).conventions() if args.method == "enumeration" else {}
        reports = [_timed_report(cache, cfg.describe(), mode, args.method, conv,
                                 lambda mode=mode: _two_row_count(args, mode))
                   for mode in _modes(args.mode)]
        _emit_reports(reports, args.format)
    elif cmd == "count-triangulations":
        cfg = Configuration.grid(args.cols, args.rows)
        if args.cols < 2 or args.rows < 2:
            raise UsageError("triangulations need at least a 2x2 grid")

        def compute(mode):
            bim = mode == "bimonotone"
            if args.method == "flip-bfs":
                return bfs_count(args.cols, args.rows, bim, args.node_budget, args.threads)
            return count_full_triangulations(cfg, bim)

        reports = [_timed_report(cache, cfg.describe(), mode, args.method, {"full_point": True},
                                 lambda mode=mode: compute(mode))
                   for mode in _modes(args.mode)]
        _emit_reports(reports, args.format)
    elif cmd == "sequences":
        fn = {"schroeder": schroeder, "schroeder-paths": schroeder_path_oracle, "delannoy": delannoy_central}
        print(dumps({"sequence": args.name, "n": args.n, "value": str(fn[args.name](args.n))}))
    elif cmd == "poly":
        poly = derive_p(args.n) if args.kind == "P" else derive_q(args.n)
        print(dumps({"kind": args.kind, "n": args.n, "coefficients": [str(c) for c in poly.coeffs],
                     "polynomial": str(poly)}))
    elif cmd == "verify":
        suites = {
            "schroeder": lambda: schroeder_suite(args.n_max),
            "delannoy-conjecture": lambda: delannoy_suite(args.n_max),
            "tables": tables_suite,
            "oracle-equivalence": lambda: oracle_equivalence_suite(threads=args.threads),
            "descent": descent_suite,
        }
        doc = suites[args.suite]()
        print(dumps(doc))
        return EXIT_FAILED if doc["status"] == "fail" else EXIT_OK
    elif cmd == "cross-validate":
        print(dumps(cross_validate(args.n_max, args.enumeration_max, Options(threads=args.threads))))
    elif cmd == "render":
        if args.canonical_triangulation:
            if args.two_row:
                raise UsageError("the canonical triangulation is defined for grids only")
            obj = canonical_triangulation(args.cols, args.rows)
        else:
            cfg = (Configuration.two_row(args.cols, args.rows) if args.two_row
                   else Configuration.grid(args.cols, args.rows))
            found = list(list_subdivisions(cfg, args.mode == "bimonotone", limit=args.index + 1))
            if len(found) <= args.index:
                raise UsageError(f"{cfg.describe()} has only {len(found)} subdivisions in this mode")
            obj = found[args.index]
        path = render_svg(obj, args.out)
        print(dumps({"written": str(path), "configuration": obj.cfg.describe(),
                     "edges": [str(e) for e in sorted(obj.edges)]}))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return run(args)
    except (UsageError, ValueError) as exc:
        print(f"gridsub: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(dumps({"status": "budget-exceeded", "detail": str(exc)}))
        return EXIT_BUDGET
    except (IdentityViolation, Discrepancy, VerificationFailure, DescentViolation) as exc:
        print(dumps({"status": "fail", "detail": str(exc)}))
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())

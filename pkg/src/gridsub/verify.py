"""Verification suites and the cross-validation driver."""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from . import reference
from .closedform import all_closed_form, bimonotone_closed_form, derive_p, derive_q
from .enumeration import Options, count_subdivisions, full_triangulations
from .flips import Triangulation, bfs, canonicalize_by_longest_diagonal
from .geometry import Configuration
from .sequences import check_delannoy_conjecture, delannoy_central, schroeder, verify_schroeder_identity
from .tworow import count_two_row_all, count_two_row_bimonotone


class Discrepancy(AssertionError):
    """Two methods that must agree produced different counts."""


def _suite(name: str, rows: list[dict]) -> dict:
    return {"suite": name, "status": "pass" if all(r["match"] for r in rows) else "fail", "rows": rows}


def _table_formula(coeffs, m: int, n: int) -> Fraction:
    poly = sum(c * m ** i for i, c in enumerate(coeffs))
    return Fraction(2) ** (m - 2) * poly / factorial(n - 1)


def tables_suite(m_max: int = 10) -> dict:
    """Recursion values against the tabulated formulas, and P_n/Q_n coefficients."""
    rows = []
    for n in range(1, 6):
        p, q = derive_p(n).int_coeffs(), derive_q(n).int_coeffs()
        rows.append({"check": f"P_{n} coefficients", "value": p,
                     "match": p == reference.BIMONOTONE_POLYS[n]})
        rows.append({"check": f"Q_{n} coefficients", "value": q,
                     "match": q == reference.ALL_POLYS[n]})
        for m in range(max(n, 2), m_max + 1):
            b, a = count_two_row_bimonotone(m, n), count_two_row_all(m, n)
            rows.append({"check": f"B({m},{n})", "value": b,
                         "match": b == _table_formula(reference.BIMONOTONE_POLYS[n], m, n)})
            rows.append({"check": f"A({m},{n})", "value": a,
                         "match": a == _table_formula(reference.ALL_POLYS[n], m, n)})
    return _suite("tables", rows)


def schroeder_suite(n_max: int) -> dict:
    report = verify_schroeder_identity(n_max)
    return {"suite": "schroeder", "status": "pass", "rows": report.rows}


def delannoy_suite(n_max: int) -> dict:
    report = check_delannoy_conjecture(n_max)
    return {"suite": "delannoy-conjecture", "status": report.status, "rows": report.rows}


ORACLE_GRIDS = ((2, 2), (2, 3), (3, 2), (3, 3))


def oracle_equivalence_suite(grids=ORACLE_GRIDS, threads: int = 1) -> dict:
    """Flip search versus filtered enumeration of full-point triangulations."""
    rows = []
    for cols, rows_ in grids:
        cfg = Configuration.grid(cols, rows_)
        bim_oracle = {Triangulation.from_subdivision(s).key for s in full_triangulations(cfg, True)}
        bim_bfs = bfs(cols, rows_, True, threads=threads)
        rows.append({"grid": f"{cols}x{rows_}", "mode": "bimonotone", "bfs": len(bim_bfs),
                     "oracle": len(bim_oracle), "match": bim_bfs == bim_oracle})
        all_oracle = len(full_triangulations(cfg, False))
        all_bfs = len(bfs(cols, rows_, False, threads=threads))
        rows.append({"grid": f"{cols}x{rows_}", "mode": "all", "bfs": all_bfs,
                     "oracle": all_oracle, "match": all_bfs == all_oracle})
    return _suite("oracle-equivalence", rows)


def descent_suite(grids=((3, 3), (3, 2))) -> dict:
    rows = []
    for cols, rows_ in grids:
        cfg = Configuration.grid(cols, rows_)
        steps = []
        for key in sorted(bfs(cols, rows_, True)):
            steps.append(len(canonicalize_by_longest_diagonal(Triangulation(cfg, frozenset(key)))))
        rows.append({"grid": f"{cols}x{rows_}", "triangulations": len(steps),
                     "max_steps": max(steps), "match": True})
    return _suite("descent", rows)


def cross_validate(n_max: int, enumeration_max: int = 6, options: Options = Options()) -> dict:
    """Compute 2 x n counts by every applicable method and demand agreement.

    The Delannoy comparison is conjectural and only reported.
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    rows = []
    for n in range(2, n_max + 1):
        for mode in ("bimonotone", "all"):
            bim = mode == "bimonotone"
            methods: dict[str, int] = {}
            if n <= enumeration_max:
                methods["enumeration"] = count_subdivisions(Configuration.grid(n, 2), bim, options)
            if bim:
                methods["recursion"] = count_two_row_bimonotone(n, n)
                methods["closed-form"] = int(bimonotone_closed_form(n, n))
                methods["schroeder-identity"] = 2 ** (n - 2) * schroeder(n - 1)
                conjecture = None
            else:
                methods["recursion"] = count_two_row_all(n, n)
                methods["closed-form"] = int(all_closed_form(n, n))
                conjecture = 2 ** (n - 2) * delannoy_central(n - 1)
            names = list(methods)
            for i in range(len(names)):
                for j in range(i + 1, len(names)):
                    if methods[names[i]] != methods[names[j]]:
                        raise Discrepancy(f"n={n} {mode}: {names[i]}={methods[names[i]]} "
                                          f"but {names[j]}={methods[names[j]]}")
            row = {"n": n, "mode": mode, "counts": {k: str(v) for k, v in methods.items()}, "match": True}
            if conjecture is not None:
                row["delannoy_conjecture"] = "consistent" if conjecture == methods["recursion"] else "mismatch"
            rows.append(row)
    return _suite("cross-validate", rows)

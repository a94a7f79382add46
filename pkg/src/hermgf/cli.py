"""``hermgf`` command line.

Every subcommand prints a record (or a list of records).  Without
``--format`` the output is human-readable with shortest round-trip floats;
``--format json|csv`` prints 17 significant digits.  Commands that check an
identity accept ``--tol`` and exit 1 when the residual exceeds it.

Exit codes: 0 success, 1 failed check or I/O error, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .bivariate import MixMatrix, g2_closed, he2_coeff, he2_grid, he2_magnitude, series_product_oracle
from .cdf_link import cdf_asymptotic, squared_double_sum, squared_identity_residual
from .contour import Branch, ContourSpec, classic_contour_he, new_contour_he, new_contour_table
from .exceptions import CapacityError, DomainError, UsageError
from .genfun import (
    GenFunPoint, asymptotic_order_check, g_closed, g_gradient, partial_sum, pde_residual,
    pde_scale,
)
from .hermite import he_coefficients, he_eval, he_sequence
from .report import IdentityReport, csv_cell, emit_report, format_float, json_value
from .verify import SUITES, run_suites


class CheckFailed(Exception):
    """A ``--tol`` check did not hold; the output has already been written."""


# -- output ----------------------------------------------------------------


def _human(v) -> str:
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, complex):
        return repr(v)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_human(x) for x in v) + "]"
    return str(v)


def _file_value(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    return v


def _json(v) -> str:
    v = _file_value(v)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json_value(str(k))}: {_json(x)}" for k, x in v.items()) + "}"
    return json_value(v)


def _csv(v) -> str:
    v = _file_value(v)
    if isinstance(v, float):
        return format_float(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return csv_cell(";".join(_csv(x) for x in v), force=True)
    return csv_cell(str(v))


def write_records(records, fmt, out, *, single=False):
    """Emit dict records; ``single`` prints one object instead of a list."""
    if fmt == "json":
        if single:
            out.write(_json(records[0]) + "\n")
        else:
            out.write("[" + ",\n ".join(_json(r) for r in records) + "]\n")
    elif fmt == "csv":
        keys = list(records[0]) if records else []
        out.write(",".join(keys) + "\n")
        for r in records:
            out.write(",".join(_csv(r[k]) for k in keys) + "\n")
    else:
        for i, r in enumerate(records):
            if i:
                out.write("\n")
            for k, v in r.items():
                out.write(f"{k}: {_human(v)}\n")


def _scalar(value, key, args, out, **extra):
    """Bare value in human mode, ``{key: value, ...}`` in file modes."""
    if args.format is None:
        out.write(_human(value) + "\n")
    else:
        write_records([{**extra, key: value}], args.format, out, single=True)


def _check(residual, args, default):
    tol = default if args.tol is None else args.tol
    if not (residual <= tol):
        raise CheckFailed(f"residual {residual!r} exceeds tolerance {tol!r}")


# -- handlers --------------------------------------------------------------


def cmd_he_eval(args, out):
    _scalar(float(he_eval(args.n, args.x)), "value", args, out, n=args.n, x=args.x)


def cmd_he_coeffs(args, out):
    c = he_coefficients(args.n).coeffs
    if args.format is None:
        out.write(" ".join(str(v) for v in c) + "\n")
    else:
        # integers can exceed 2**53; keep them exact as strings
        write_records([{"n": args.n, "coeffs": [str(v) for v in c]}], args.format, out, single=True)


def cmd_he_seq(args, out):
    seq = [float(v) for v in he_sequence(args.nmax, args.x)]
    write_records([{"n": n, "value": v} for n, v in enumerate(seq)], args.format, out)


def _point(args):
    return GenFunPoint(args.x, args.t)


def cmd_gf_eval(args, out):
    p = _point(args)
    g = g_closed(p, extended=args.extended)
    write_records([{"x": p.x, "t": p.t, "z": p.z, "g": g, "branch": p.branch}],
                  args.format, out, single=True)


def cmd_gf_grad(args, out):
    p = _point(args)
    dt, dx = g_gradient(p, extended=args.extended)
    write_records([{"x": p.x, "t": p.t, "dg_dt": dt, "dg_dx": dx}], args.format, out, single=True)


def cmd_gf_pde(args, out):
    p = _point(args)
    r = pde_residual(p, extended=args.extended)
    scaled = abs(r) / pde_scale(p, extended=args.extended)
    write_records([{"x": p.x, "t": p.t, "residual": r, "scaled_residual": scaled}],
                  args.format, out, single=True)
    _check(scaled, args, 1e-11)


def cmd_gf_sum(args, out):
    p = _point(args)
    s = partial_sum(p.x, p.t, args.N)
    write_records([{"x": p.x, "t": p.t, "N": args.N, "partial_sum": float(s.partial_sums[-1]),
                    "n_star": s.n_star, "optimal_sum": float(s.optimal_sum),
                    "min_term": float(s.min_term), "closed": g_closed(p)}],
                  args.format, out, single=True)


def cmd_gf_order(args, out):
    rows = asymptotic_order_check(args.x, args.N, args.t)
    write_records([{"x": args.x, "N": args.N, **r._asdict()} for r in rows], args.format, out)
    _check(max(r.deviation for r in rows), args, 1e-2)


def cmd_cdf_asym(args, out):
    r = cdf_asymptotic(args.x, args.mu, args.N)
    write_records([{"x": r.x, "mu": r.mu, "N": r.n_terms, "value": r.value, "reference": r.reference,
                    "rel_error": r.rel_error, "series_sum": r.series_sum}], args.format, out, single=True)
    if args.tol is not None:
        _check(r.rel_error, args, args.tol)


def cmd_cdf_square(args, out):
    res = squared_identity_residual(args.x, args.mu, args.N)
    write_records([{"x": args.x, "mu": args.mu, "N": args.N,
                    "double_sum": squared_double_sum(args.x, args.mu, args.N), "residual": res}],
                  args.format, out, single=True)
    _check(res, args, 1e-10)


def _matrix(args):
    return MixMatrix(*args.matrix) if args.matrix else MixMatrix.identity()


def cmd_bivar_coeff(args, out):
    M = _matrix(args)
    _scalar(he2_coeff(M, args.n, args.m, args.x, args.y), "value", args, out,
            n=args.n, m=args.m, x=args.x, y=args.y)


def cmd_bivar_eval(args, out):
    M = _matrix(args)
    rec = {"x": args.x, "y": args.y, "t": args.t, "s": args.s, "g2": g2_closed(args.x, args.y, args.t, args.s, M)}
    if M.is_singular:
        rec["note"] = "singular mixing matrix"
    write_records([rec], args.format, out, single=True)


def cmd_bivar_oracle(args, out):
    M = _matrix(args)
    grid = he2_grid(M, args.N, args.x, args.y)
    oracle = series_product_oracle(M, args.x, args.y, args.N).coeffs
    rows, worst = [], 0.0
    for n in range(args.N + 1):
        for m in range(args.N + 1 - n):
            mag = he2_magnitude(M, n, m, args.x, args.y)
            rel = abs(grid[n, m] - oracle[n, m]) / mag if mag else abs(oracle[n, m])
            worst = max(worst, rel)
            rows.append({"n": n, "m": m, "extraction": float(grid[n, m]), "oracle": float(oracle[n, m]), "rel": rel})
    write_records(rows, args.format, out)
    _check(worst, args, 1e-10)


def _spec(args):
    return ContourSpec(args.radius, args.nodes, Branch(args.branch))


def cmd_contour_classic(args, out):
    v = classic_contour_he(args.n, args.x, _spec(args))
    h = float(he_eval(args.n, args.x))
    rel = abs(v.real - h) / max(1.0, abs(h))
    write_records([{"n": args.n, "x": args.x, "radius": args.radius, "nodes": args.nodes,
                    "re": v.real, "im": v.imag, "he_eval": h, "rel_error": rel}],
                  args.format, out, single=True)
    _check(rel, args, 1e-9)


def cmd_contour_new(args, out):
    if args.grid:
        rows = [d.as_row() for d in new_contour_table(nodes=args.nodes)]
    else:
        if args.n is None or args.x is None:
            raise UsageError("contour new needs --n and --x, or --grid")
        rows = [new_contour_he(args.n, args.x, _spec(args))[1].as_row()]
    write_records(rows, args.format, out)


def cmd_verify(args, out):
    rows = run_suites(args.suite or ["all"], seed=args.seed)
    if args.tol is not None:
        rows = [IdentityReport(r.identity_id, r.inputs, r.residual, args.tol, None, r.notes) for r in rows]
    if args.format is None:
        for r in rows:
            mark = "PASS" if r.passed else "FAIL"
            out.write(f"{mark} {r.identity_id} residual={r.residual!r} tol={r.tolerance!r}  {r.notes}\n")
    else:
        emit_report(rows, args.format, out)
    failed = [r.identity_id for r in rows if not r.passed]
    if failed:
        raise CheckFailed("failed: " + ", ".join(failed))


# -- parser ----------------------------------------------------------------


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("json", "csv"), default=None,
                   help="machine-readable output (default: human text)")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--seed", type=int, default=0, help="seed for random sweeps")
    p.add_argument("--tol", type=float, default=None, help="override the check tolerance")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="hermgf", description=__doc__.splitlines()[0],
                                     allow_abbrev=False)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    top = parser.add_subparsers(dest="group", required=True)

    def group(name, help_):
        g = top.add_parser(name, help=help_, allow_abbrev=False)
        return g.add_subparsers(dest="command", required=True)

    def leaf(sub, name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_, allow_abbrev=False)
        p.set_defaults(func=func)
        return p

    he = group("he", "Hermite polynomials")
    p = leaf(he, "eval", cmd_he_eval, "He_n(x)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=float, required=True)
    p = leaf(he, "coeffs", cmd_he_coeffs, "exact monomial coefficients, constant term first")
    p.add_argument("--n", type=int, required=True)
    p = leaf(he, "seq", cmd_he_seq, "He_0(x) .. He_nmax(x)")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--x", type=float, required=True)

    gf = group("gf", "generating function")
    for name, func, help_ in (("eval", cmd_gf_eval, "closed form g(x, t)"),
                              ("grad", cmd_gf_grad, "analytic partial derivatives"),
                              ("pde", cmd_gf_pde, "first-order PDE residual"),
                              ("sum", cmd_gf_sum, "partial sums and optimal truncation")):
        p = leaf(gf, name, func, help_)
        p.add_argument("--x", type=float, required=True)
        p.add_argument("--t", type=float, required=True)
        if name == "sum":
            p.add_argument("--N", type=int, required=True)
        else:
            p.add_argument("--extended", action="store_true", help="allow 1 - x t <= 0")
    p = leaf(gf, "order", cmd_gf_order, "(g - S_N) / t^(N+1) against He_{N+1}(x)")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--t", type=float, nargs="+", default=[1e-2, 1e-3, 1e-4])

    cdf = group("cdf", "normal CDF series")
    for name, func in (("asym", cmd_cdf_asym), ("square", cmd_cdf_square)):
        p = leaf(cdf, name, func, "truncated series vs erfc" if name == "asym" else "squared identity")
        p.add_argument("--x", type=float, required=True)
        p.add_argument("--mu", type=float, required=True)
        p.add_argument("--N", type=int, required=True)

    bv = group("bivar", "bivariate family")
    p = leaf(bv, "coeff", cmd_bivar_coeff, "He_{n,m}(M; x, y)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p = leaf(bv, "eval", cmd_bivar_eval, "g(x, t') g(y, s')")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--s", type=float, required=True)
    p = leaf(bv, "oracle", cmd_bivar_oracle, "extraction vs truncated series product")
    p.add_argument("--N", type=int, required=True)
    for p in bv.choices.values():
        p.add_argument("--x", type=float, required=True)
        p.add_argument("--y", type=float, required=True)
        p.add_argument("--matrix", type=float, nargs=4, metavar=("A", "B", "C", "D"),
                       help="mixing matrix [[A, B], [C, D]] (default identity)")

    ct = group("contour", "contour-integral extraction")
    p = leaf(ct, "classic", cmd_contour_classic, "He_n from exp(x t - t^2/2)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=float, required=True)
    p = leaf(ct, "new", cmd_contour_new, "instrumented extraction from g (measurement only)")
    p.add_argument("--n", type=int)
    p.add_argument("--x", type=float)
    p.add_argument("--grid", action="store_true", help="n <= 4, r in {0.02, 0.05, 0.1}, both branches")
    for p in ct.choices.values():
        p.add_argument("--radius", type=float, default=1.0)
        p.add_argument("--nodes", type=int, default=4096)
        p.add_argument("--branch", choices=[b.value for b in Branch], default=Branch.SQRT2_TIMES_T.value)

    p = top.add_parser("verify", parents=[common], help="run identity suites", allow_abbrev=False)
    p.add_argument("--suite", action="append", choices=["all", *SUITES],
                   help="suite to run; repeatable (default all)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits 2 on usage errors
    try:
        out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    except OSError as exc:
        print(f"hermgf: cannot open output: {exc}", file=sys.stderr)
        return 1
    try:
        args.func(args, out)
        out.flush()
    except CheckFailed as exc:
        print(f"hermgf: check failed: {exc}", file=sys.stderr)
        return 1
    except (DomainError, CapacityError, UsageError, ValueError) as exc:
        print(f"hermgf: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"hermgf: I/O error: {exc}", file=sys.stderr)
        return 1
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

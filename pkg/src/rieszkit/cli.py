"""Command-line entry point ``riesz-kit``.

Exit codes: 0 success, 1 a property check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import harness
from .coeffs import RieszOrder, a_coeffs, b_coeffs, g_coeffs
from .golden import RIESZ_REFS, ROUGH_REF, TELEGRAPH_REF, grid_of
from .riesz_ops import Grid1D, GridFn, exact_riesz_symmetric_poly, riesz_derivative
from .telegraph import example3_problem, manufactured_problem, max_error, solve

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(s) for s in text.split(",") if s.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad number list {text!r}") from exc


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from exc


def _order(alpha: float) -> RieszOrder:
    try:
        return RieszOrder(alpha)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _table_text(header: Sequence[str], rows: Sequence[Sequence], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([dict(zip(header, r)) for r in rows], indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows([[_num(v) for v in r] for r in rows])
        return buf.getvalue()
    widths = [max(len(str(h)), *(len(_num(r[i])) for r in rows)) for i, h in enumerate(header)]
    lines = ["  ".join(str(h).rjust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(_num(v).rjust(w) for v, w in zip(r, widths)) for r in rows]
    return "\n".join(lines) + "\n"


def _num(v) -> str:
    if isinstance(v, float):
        return format(v, ".16g")
    return str(v)


# ---------------------------------------------------------------------------
# subcommands


def cmd_coeffs(ns) -> tuple[str, int]:
    order = _order(ns.alpha)
    g = g_coeffs(order, ns.count - 1).g
    rows = [("g", k, float(v)) for k, v in enumerate(g)]
    rows += [("a", p, float(v)) for p, v in enumerate(a_coeffs(order).a)]
    rows += [("b", p, float(v)) for p, v in enumerate(b_coeffs(order, 10).b)]
    return _table_text(("family", "index", "value"), rows, ns.format), EXIT_OK


def cmd_riesz_apply(ns) -> tuple[str, int]:
    order = _order(ns.alpha)
    if ns.m % 2:
        raise UsageError("--m must be even so that x = 1/2 is a node")
    grid = Grid1D(0.0, 1.0, ns.m)
    p = ns.poly
    u = GridFn.sample(grid, lambda x: x**p * (1 - x) ** p)
    w = riesz_derivative(u, order, ns.order).values
    exact = exact_riesz_symmetric_poly(p, order, grid.interior)
    rows = [(float(x), float(a), float(e), float(abs(a - e))) for x, a, e in zip(grid.interior, w, exact)]
    if not ns.all_nodes:
        rows = [rows[ns.m // 2 - 1]]
    return _table_text(("x", "approx", "exact", "abs_error"), rows, ns.format), EXIT_OK


def _sweep_grid(ns, default_alphas, default_Ms):
    alphas = ns.alphas or tuple(default_alphas)
    Ms = ns.Ms or tuple(default_Ms)
    for a in alphas:
        _order(a)
    return alphas, Ms


def cmd_riesz_convergence(ns) -> tuple[str, int]:
    if ns.example == 2:
        alphas, Ms = _sweep_grid(ns, *grid_of(ROUGH_REF))
        rows = harness.example2_sweep(alphas, Ms, ns.parallel)
    else:
        if ns.order not in RIESZ_REFS:
            raise UsageError("--order must be one of 4, 6, 8, 10")
        table, m = RIESZ_REFS[ns.order]
        alphas, Ms = _sweep_grid(ns, *grid_of(table))
        rows = harness.example1_sweep(ns.order, alphas, Ms, ns.poly or m, ns.parallel)
    return harness.emit(rows, ns.format), EXIT_OK


def cmd_telegraph_convergence(ns) -> tuple[str, int]:
    alphas, Ms = _sweep_grid(ns, *grid_of(TELEGRAPH_REF))
    rows = harness.example3_sweep(alphas, Ms, ns.variant, ns.parallel)
    return harness.emit(rows, ns.format), EXIT_OK


def _parse_problem(spec: str, alpha: float, nu: float, kappa_sq: float):
    if spec == "example3":
        if nu != 1.0 or kappa_sq != 1.0:
            raise UsageError("example3 is defined for nu = kappa^2 = 1")
        return example3_problem(alpha)
    if spec.startswith("manufactured"):
        m = 6
        _, _, opts = spec.partition(":")
        if opts:
            key, _, val = opts.partition("=")
            if key != "m" or not val.isdigit() or int(val) < 2:
                raise UsageError("expected manufactured:m=<int >= 2>")
            m = int(val)
        return manufactured_problem(alpha, m=m, time_factor="exp", nu=nu, kappa_sq=kappa_sq)
    raise UsageError(f"unknown problem {spec!r}")


def cmd_telegraph_solve(ns) -> tuple[str, int]:
    _order(ns.alpha)
    if ns.nu <= 0 or ns.kappa_sq <= 0:
        raise UsageError("--nu and --kappa-sq must be positive")
    p = _parse_problem(ns.problem, ns.alpha, ns.nu, ns.kappa_sq)
    sol = solve(p, ns.M, ns.N, first_level=ns.first_level)
    err = max_error(sol, p.exact) if p.exact is not None else None
    if ns.format == "json":
        d = sol.to_dict()
        d["max_error"] = err
        return json.dumps(d) + "\n", EXIT_OK
    x = sol.grid.nodes
    rows = [(float(xi), float(v)) for xi, v in zip(x, sol.values[-1])]
    text = _table_text(("x", "u(T)"), rows, ns.format)
    if ns.format == "pretty" and err is not None:
        text += f"max error = {err:.6e}\n"
    return text, EXIT_OK


def cmd_verify_properties(ns) -> tuple[str, int]:
    results = harness.property_suite(quick=ns.quick)
    code = EXIT_OK if all(r.passed for r in results) else EXIT_FAIL
    if ns.format == "json":
        payload = [
            {"name": r.name, "passed": r.passed, "tolerance": r.tolerance, "detail": r.detail, "seconds": r.seconds}
            for r in results
        ]
        return json.dumps(payload, indent=2) + "\n", code
    if ns.format == "csv":
        rows = [(r.name, "PASS" if r.passed else "FAIL", r.tolerance, r.detail) for r in results]
        return _table_text(("name", "status", "tolerance", "detail"), rows, "csv"), code
    return "\n".join(r.line() for r in results) + "\n", code


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json", "pretty"), default="pretty")
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--parallel", type=int, default=1, help="worker threads for sweeps")

    p = argparse.ArgumentParser(prog="riesz-kit", description="Riesz-derivative schemes and telegraph solver")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("coeffs", parents=[common], help="g, a and b coefficients")
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--count", type=int, default=10, help="number of g_k entries")
    s.set_defaults(func=cmd_coeffs)

    s = sub.add_parser("riesz-apply", parents=[common], help="apply a scheme to x^p (1-x)^p")
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--order", type=int, default=4, choices=(2, 4, 6, 8, 10))
    s.add_argument("--m", type=int, default=20, help="number of cells")
    s.add_argument("--poly", type=int, default=4, help="exponent p")
    s.add_argument("--all-nodes", action="store_true", help="report every interior node, not just x = 1/2")
    s.set_defaults(func=cmd_riesz_apply)

    s = sub.add_parser("riesz-convergence", parents=[common], help="error tables of the Riesz schemes")
    s.add_argument("--example", type=int, choices=(1, 2), default=1)
    s.add_argument("--order", type=int, default=4)
    s.add_argument("--poly", type=int, help="bump exponent (default: the scheme order)")
    s.add_argument("--alphas", type=_floats)
    s.add_argument("--Ms", type=_ints)
    s.set_defaults(func=cmd_riesz_convergence)

    s = sub.add_parser("telegraph-solve", parents=[common], help="solve one telegraph problem")
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--nu", type=float, default=1.0)
    s.add_argument("--kappa-sq", type=float, default=1.0)
    s.add_argument("--M", type=int, required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--problem", default="example3", help="example3 | manufactured[:m=<int>]")
    s.add_argument("--first-level", choices=("bootstrap", "exact"), default="bootstrap")
    s.set_defaults(func=cmd_telegraph_solve)

    s = sub.add_parser("telegraph-convergence", parents=[common], help="telegraph error table")
    s.add_argument("--variant", choices=harness.TELEGRAPH_VARIANTS, default="table")
    s.add_argument("--alphas", type=_floats)
    s.add_argument("--Ms", type=_ints)
    s.set_defaults(func=cmd_telegraph_convergence)

    s = sub.add_parser("verify-properties", parents=[common], help="run the property suite")
    s.add_argument("--quick", action="store_true", help="skip the slow checks")
    s.set_defaults(func=cmd_verify_properties)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        text, code = ns.func(ns)
    except (UsageError, ValueError) as exc:
        print(f"riesz-kit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if ns.out:
        with open(ns.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

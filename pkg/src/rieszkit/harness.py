"""Convergence sweeps, table emitters and the property suite entry point."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Iterable, Literal, Sequence

from .riesz_ops import Grid1D, GridFn, exact_riesz_symmetric_poly, riesz_derivative
from .telegraph import example3_problem, manufactured_problem, max_error, solve

__all__ = [
    "ConvergenceRow",
    "SweepSpec",
    "eco",
    "attach_eco",
    "riesz_error_at_half",
    "example1_sweep",
    "example2_sweep",
    "example3_sweep",
    "run_sweep",
    "emit",
    "parse_csv",
    "parse_json",
    "property_suite",
]

DEFAULT_POLY = {4: 4, 6: 6, 8: 8, 10: 10}


@dataclass(frozen=True)
class ConvergenceRow:
    alpha: float
    h: float
    E: float
    tau: float | None = None
    eco: float | None = None


@dataclass(frozen=True)
class SweepSpec:
    """Description of one convergence study.

    ``Ms`` are cell counts on [0, 1], strictly increasing (``h = 1/M``
    strictly decreasing). For ``example3`` the time step equals ``h``.
    """

    experiment: Literal["example1", "example2", "example3"]
    alphas: tuple[float, ...]
    Ms: tuple[int, ...]
    scheme_order: int = 4
    poly_m: int | None = None
    variant: str = "table"

    def __post_init__(self) -> None:
        if any(b <= a for a, b in zip(self.Ms, self.Ms[1:])):
            raise ValueError("resolutions must be strictly refining")


def eco(E1: float, E2: float, h1: float, h2: float) -> float:
    """Observed order ``log(E1/E2) / log(h1/h2)``."""
    return math.log(E1 / E2) / math.log(h1 / h2)


def attach_eco(rows: Sequence[ConvergenceRow]) -> list[ConvergenceRow]:
    """Fill ``eco`` on every row that has a coarser predecessor of the same alpha."""
    out: list[ConvergenceRow] = []
    prev: ConvergenceRow | None = None
    for r in rows:
        e = None
        if prev is not None and prev.alpha == r.alpha and prev.E > 0 and r.E > 0:
            e = eco(prev.E, r.E, prev.h, r.h)
        out.append(ConvergenceRow(r.alpha, r.h, r.E, r.tau, e))
        prev = r
    return out


def _check_even(M: int) -> None:
    if M % 2:
        raise ValueError(f"M={M} is odd; x = 1/2 is not a grid node")


def riesz_error_at_half(alpha: float, M: int, scheme_order: int, poly_m: int) -> float:
    """``|w - exact|`` at ``x = 1/2`` for the bump ``x^m (1-x)^m`` on [0, 1]."""
    _check_even(M)
    grid = Grid1D(0.0, 1.0, M)
    u = GridFn.sample(grid, lambda x: x**poly_m * (1.0 - x) ** poly_m)
    w = riesz_derivative(u, alpha, scheme_order).values
    return float(abs(w[M // 2 - 1] - exact_riesz_symmetric_poly(poly_m, alpha, 0.5)))


def _grid_map(fn: Callable, cells: list, parallel: int) -> list:
    if parallel and parallel > 1:
        with ThreadPoolExecutor(max_workers=parallel) as ex:
            # map preserves input order regardless of completion order
            return list(ex.map(lambda c: fn(*c), cells))
    return [fn(*c) for c in cells]


def example1_sweep(
    scheme_order: int,
    alphas: Iterable[float],
    Ms: Sequence[int],
    poly_m: int | None = None,
    parallel: int = 1,
) -> list[ConvergenceRow]:
    """Error at ``x = 1/2`` of the order-``scheme_order`` formula on a bump.

    The bump exponent defaults to ``scheme_order`` (``x^4(1-x)^4`` for the
    fourth-order formula, and so on).
    """
    m = DEFAULT_POLY.get(scheme_order, scheme_order) if poly_m is None else poly_m
    for M in Ms:
        _check_even(M)
    cells = [(a, M, scheme_order, m) for a in alphas for M in Ms]
    errs = _grid_map(riesz_error_at_half, cells, parallel)
    rows = [ConvergenceRow(a, 1.0 / M, E) for (a, M, _, _), E in zip(cells, errs)]
    return attach_eco(rows)


def example2_sweep(alphas: Iterable[float], Ms: Sequence[int], parallel: int = 1) -> list[ConvergenceRow]:
    """Fourth-order formula applied to ``x(1-x)``, which is not smooth once zero-extended."""
    return example1_sweep(4, alphas, Ms, poly_m=1, parallel=parallel)


def _telegraph_error(alpha: float, M: int, variant: str) -> float:
    if variant == "table":
        # exact solution x^6 (1-x)^6 e^t with its own source, u^1 sampled
        p = manufactured_problem(alpha, m=6, time_factor="exp")
        sol = solve(p, M, M, first_level="exact")
    elif variant == "given":
        # given source, residual-verified solution, Taylor start
        p = example3_problem(alpha)
        sol = solve(p, M, M, first_level="bootstrap")
    elif variant == "bootstrap-exp":
        p = manufactured_problem(alpha, m=6, time_factor="exp")
        sol = solve(p, M, M, first_level="bootstrap")
    else:
        raise ValueError(f"unknown telegraph variant {variant!r}")
    return max_error(sol, p.exact)


TELEGRAPH_VARIANTS = ("table", "given", "bootstrap-exp")


def example3_sweep(
    alphas: Iterable[float],
    Ms: Sequence[int],
    variant: str = "table",
    parallel: int = 1,
) -> list[ConvergenceRow]:
    """Telegraph convergence with ``tau = h = 1/M``, ``nu = kappa^2 = 1``, ``T = 1``.

    Variants
    --------
    ``"table"``
        Exact solution ``x^6 (1-x)^6 e^t`` with the matching source and the
        first level sampled from it. This is the configuration that
        reproduces the reference error table.
    ``"given"``
        The given source term, whose solution is ``x^6 (1-x)^6 e^{t^2}``,
        started with the Taylor bootstrap.
    ``"bootstrap-exp"``
        As ``"table"`` but started with the Taylor bootstrap.
    """
    if variant not in TELEGRAPH_VARIANTS:
        raise ValueError(f"variant must be one of {TELEGRAPH_VARIANTS}")
    cells = [(a, M, variant) for a in alphas for M in Ms]
    errs = _grid_map(_telegraph_error, cells, parallel)
    rows = [ConvergenceRow(a, 1.0 / M, E, tau=1.0 / M) for (a, M, _), E in zip(cells, errs)]
    return attach_eco(rows)


def run_sweep(spec: SweepSpec, parallel: int = 1) -> list[ConvergenceRow]:
    if spec.experiment == "example1":
        return example1_sweep(spec.scheme_order, spec.alphas, spec.Ms, spec.poly_m, parallel)
    if spec.experiment == "example2":
        return example2_sweep(spec.alphas, spec.Ms, parallel)
    if spec.experiment == "example3":
        return example3_sweep(spec.alphas, spec.Ms, spec.variant, parallel)
    raise ValueError(f"unknown experiment {spec.experiment!r}")


# ---------------------------------------------------------------------------
# Emitters

CSV_HEADER = ("alpha", "h", "tau", "E", "ECO")


def _g7(v: float | None) -> str:
    return "" if v is None else format(v, ".7g")


def _row_fields(r: ConvergenceRow) -> list[str]:
    return [_g7(r.alpha), _g7(r.h), _g7(r.tau), format(r.E, ".6e"), _g7(r.eco)]


def emit(rows: Sequence[ConvergenceRow], fmt: Literal["csv", "json", "pretty"] = "csv") -> str:
    """Serialize a convergence table.

    Numbers carry seven significant digits; ``E`` uses e-format.
    """
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in rows:
            w.writerow(_row_fields(r))
        return buf.getvalue()
    if fmt == "json":
        return json.dumps([asdict(r) for r in rows], indent=2) + "\n"
    if fmt == "pretty":
        return _pretty(rows)
    raise ValueError(f"unknown format {fmt!r}")


def _pretty(rows: Sequence[ConvergenceRow]) -> str:
    has_tau = any(r.tau is not None for r in rows)
    head = f"{'alpha':>6}  {'h':>10}  " + (f"{'tau':>10}  " if has_tau else "") + f"{'E':>14}  {'ECO':>8}"
    lines = [head, "-" * len(head)]
    last_alpha = None
    for r in rows:
        a = _g7(r.alpha) if r.alpha != last_alpha else ""
        h = f"1/{round(1 / r.h)}" if r.h > 0 else _g7(r.h)
        tau = (f"1/{round(1 / r.tau)}" if r.tau else "") if has_tau else None
        e = "---" if r.eco is None else f"{r.eco:.4f}"
        cols = f"{a:>6}  {h:>10}  " + (f"{tau:>10}  " if has_tau else "") + f"{r.E:>14.6e}  {e:>8}"
        lines.append(cols)
        last_alpha = r.alpha
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> list[ConvergenceRow]:
    """Inverse of ``emit(rows, "csv")``."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or tuple(header) != CSV_HEADER:
        raise ValueError("unexpected CSV header")

    def opt(s: str) -> float | None:
        return float(s) if s else None

    return [
        ConvergenceRow(alpha=float(a), h=float(h), E=float(E), tau=opt(t), eco=opt(e))
        for a, h, t, E, e in reader
    ]


def parse_json(text: str) -> list[ConvergenceRow]:
    """Inverse of ``emit(rows, "json")``."""
    return [ConvergenceRow(**d) for d in json.loads(text)]


def property_suite(quick: bool = False):
    """Run every named property check; see :mod:`rieszkit.properties`."""
    from .properties import run_all

    return run_all(quick=quick)

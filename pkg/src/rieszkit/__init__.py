"""Fractional centred differences, compact Riesz-derivative formulas and a
fourth-order solver for the Riesz space-fractional telegraph equation."""

from .coeffs import (
    RieszOrder,
    a_coeffs,
    b_coeffs,
    g_coeffs,
    partial_sum,
    theorem1_bounds,
)
from .riesz_ops import (
    Grid1D,
    GridFn,
    build_A,
    build_D,
    centred_diff_apply,
    exact_riesz_symmetric_poly,
    riesz_derivative,
)
from .specfun import gamma, ln_gamma

__version__ = "0.1.0"

__all__ = [
    "RieszOrder",
    "a_coeffs",
    "b_coeffs",
    "g_coeffs",
    "partial_sum",
    "theorem1_bounds",
    "Grid1D",
    "GridFn",
    "build_A",
    "build_D",
    "centred_diff_apply",
    "exact_riesz_symmetric_poly",
    "riesz_derivative",
    "gamma",
    "ln_gamma",
]

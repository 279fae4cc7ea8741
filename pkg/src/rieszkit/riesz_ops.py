"""Grid operators for the Riesz derivative on a bounded interval.

Functions are assumed to vanish at both endpoints and are zero-extended
outside the interval, so the whole-line centred difference truncates to a
finite sum over the grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import comb

from .coeffs import RieszOrder, _as_order, b_coeffs, g_coeffs
from .linalg import BandedMatrix, SymToeplitzMatrix, banded_solve, toeplitz_matvec
from .specfun import gamma

__all__ = [
    "Grid1D",
    "GridFn",
    "RieszApproximation",
    "NonzeroBoundaryError",
    "GridTooSmallError",
    "centred_diff_apply",
    "central_difference_power",
    "compact_stencil_apply",
    "build_A",
    "build_D",
    "riesz_derivative",
    "exact_riesz_symmetric_poly",
]


class NonzeroBoundaryError(ValueError):
    pass


class GridTooSmallError(ValueError):
    pass


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid ``x_j = l + j h``, ``j = 0..M``, with ``h = (L - l)/M``."""

    l: float
    L: float
    M: int

    def __post_init__(self) -> None:
        if not self.L > self.l:
            raise ValueError("need L > l")
        if int(self.M) != self.M or self.M < 4:
            raise ValueError("need an integer M >= 4")

    @property
    def h(self) -> float:
        return (self.L - self.l) / self.M

    @property
    def nodes(self) -> np.ndarray:
        return self.l + self.h * np.arange(self.M + 1)

    @property
    def interior(self) -> np.ndarray:
        return self.nodes[1:-1]


@dataclass(frozen=True)
class GridFn:
    grid: Grid1D
    values: np.ndarray

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, float)
        if vals.shape != (self.grid.M + 1,):
            raise ValueError(f"expected {self.grid.M + 1} values, got {vals.shape}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def sample(cls, grid: Grid1D, func: Callable[[np.ndarray], np.ndarray]) -> "GridFn":
        return cls(grid, np.asarray(func(grid.nodes), float))

    @property
    def interior(self) -> np.ndarray:
        return self.values[1:-1]


@dataclass(frozen=True)
class RieszApproximation:
    values: np.ndarray
    scheme_order: int
    alpha: float


def _require_zero_ends(u: GridFn) -> None:
    v = u.values
    scale = np.max(np.abs(v))
    if scale > 0 and max(abs(v[0]), abs(v[-1])) > 1e-14 * scale:
        raise NonzeroBoundaryError("grid function must vanish at both endpoints")


def build_A(order: RieszOrder | float, M: int) -> SymToeplitzMatrix:
    """``(M-1) x (M-1)`` symmetric Toeplitz matrix with first row ``g_0..g_{M-2}``."""
    if M < 3:
        raise ValueError("need M >= 3")
    return SymToeplitzMatrix(first_row=g_coeffs(order, M - 2).g)


def build_D(order: RieszOrder | float, M: int) -> BandedMatrix:
    """Tridiagonal matrix of ``delta^0 + (alpha/24) delta^2`` on interior nodes."""
    if M < 3:
        raise ValueError("need M >= 3")
    a = _as_order(order).alpha
    return BandedMatrix.from_diagonals({-1: a / 24.0, 0: 1.0 - a / 12.0, 1: a / 24.0}, M - 1)


def centred_diff_apply(order: RieszOrder | float, u: GridFn) -> np.ndarray:
    """Truncated fractional centred difference at interior nodes.

    ``w_j = sum_{k=-(M-j)}^{j} g_k u_{j-k}`` for ``j = 1..M-1``.
    """
    _require_zero_ends(u)
    # the end samples are zero, so the interior Toeplitz product is the whole
    # sum; sharing this path with A_alpha keeps the two bitwise identical
    return toeplitz_matvec(build_A(order, u.grid.M), u.interior)


def central_difference_power(v: np.ndarray, ell: int) -> np.ndarray:
    """``delta^{2 ell} v`` with zero values outside the given vector."""
    v = np.asarray(v, float)
    if ell == 0:
        return v.copy()
    kernel = np.array([(-1) ** s * comb(2 * ell, s, exact=True) for s in range(2 * ell + 1)], float)
    padded = np.concatenate([np.zeros(ell), v, np.zeros(ell)])
    return np.convolve(padded, kernel, mode="valid")


def compact_stencil_apply(order: RieszOrder | float, v_full: np.ndarray) -> np.ndarray:
    """Apply ``delta^0 + (alpha/24) delta^2`` to a full-grid vector.

    Returns interior values; the end samples of ``v_full`` enter the first
    and last rows. With zero end samples this equals ``build_D(...) @ v``.
    """
    a = _as_order(order).alpha
    v = np.asarray(v_full, float)
    return (1.0 - a / 12.0) * v[1:-1] + (a / 24.0) * (v[:-2] + v[2:])


def riesz_derivative(
    u: GridFn, order: RieszOrder | float, scheme_order: int = 4
) -> RieszApproximation:
    """Fractional-compact approximation of the Riesz derivative.

    Parameters
    ----------
    u : GridFn
        Samples vanishing at both ends.
    order : RieszOrder or float
        Fractional order ``alpha``.
    scheme_order : {2, 4, 6, 8, 10}
        Formal accuracy ``2n``.

    Returns
    -------
    RieszApproximation
        Values at the interior nodes.

    Notes
    -----
    With ``r = -centred_diff(u) / h**alpha``, the result solves
    ``(I - b_{n-1} delta^{2n-2}) w = sum_{l<n-1} b_l delta^{2l} r``. Stencil
    reads beyond the interior are taken as zero.
    """
    order = _as_order(order)
    coeffs = b_coeffs(order, scheme_order)
    n = coeffs.n
    M = u.grid.M
    if M - 1 <= 2 * (n - 1):
        raise GridTooSmallError(f"M={M} too small for scheme order {scheme_order}")
    r = -centred_diff_apply(order, u) / u.grid.h**order.alpha
    if n == 1:
        return RieszApproximation(r, scheme_order, order.alpha)
    if n == 2:
        # the fourth-order left operator is exactly D_alpha
        return RieszApproximation(banded_solve(build_D(order, M), r), scheme_order, order.alpha)
    b = coeffs.b
    s = sum(b[ell] * central_difference_power(r, ell) for ell in range(n - 1))
    w = banded_solve(_compact_lhs(b[n - 1], n - 1, M - 1), s)
    return RieszApproximation(w, scheme_order, order.alpha)


def _compact_lhs(b_last: float, ell: int, size: int) -> BandedMatrix:
    # I - b_last * delta^{2 ell}
    diags: dict[int, float] = {}
    for s in range(2 * ell + 1):
        k = ell - s
        diags[k] = -b_last * (-1) ** s * comb(2 * ell, s, exact=True)
    diags[0] += 1.0
    return BandedMatrix.from_diagonals(diags, size)


def exact_riesz_symmetric_poly(
    m: int, order: RieszOrder | float, x: float | np.ndarray
) -> float | np.ndarray:
    """Riesz derivative of the zero-extended ``x**m (1-x)**m`` on [0, 1].

    Parameters
    ----------
    m : int
        Exponent, ``m >= 1``.
    order : RieszOrder or float
    x : float or ndarray
        Points in the open interval (0, 1). The endpoints are allowed when
        every exponent ``m + l - alpha`` is positive, i.e. ``m >= 2``.

    Returns
    -------
    float or ndarray
    """
    if int(m) != m or m < 1:
        raise ValueError("m must be a positive integer")
    m = int(m)
    order = _as_order(order)
    a = order.alpha
    xa = np.asarray(x, float)
    lo_ok = (xa > 0.0) & (xa < 1.0) if m - a <= 0 else (xa >= 0.0) & (xa <= 1.0)
    if not np.all(lo_ok):
        raise ValueError("x outside the admissible range for this exponent")
    total = np.zeros_like(xa)
    fm = math.factorial(m)
    for ell in range(m + 1):
        # m! (m+l)! / (l! (m-l)!) is an exact integer
        num = fm * math.factorial(m + ell) // (math.factorial(ell) * math.factorial(m - ell))
        c = (-1) ** ell * (num / gamma(m + ell + 1 - a))
        p = m + ell - a
        total = total + c * (xa**p + (1.0 - xa) ** p)
    out = -total / (2.0 * math.cos(0.5 * math.pi * a))
    return float(out) if np.ndim(x) == 0 else out

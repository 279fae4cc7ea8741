"""Coefficient families for fractional centred differences and compact formulas.

Contents:

* ``g_k``: weights of the fractional centred difference, whose generating
  function is ``|2 sin(w/2)|**alpha``;
* ``b_l``: weights of the even-order fractional-compact formulas;
* ``a_p``: leading coefficients of ``|2 sin(z/2) / z|**alpha`` in powers of
  ``z**2``;
* the bound functions ``S, P1, P2, Q1, Q2`` for the magnitudes of ``g_k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .specfun import gamma

__all__ = [
    "RieszOrder",
    "CentredCoeffs",
    "CompactCoeffs",
    "SeriesCoeffs",
    "Theorem1Bounds",
    "SUPPORTED_SCHEME_ORDERS",
    "g_coeffs",
    "b_coeffs",
    "a_coeffs",
    "theorem1_bounds",
    "partial_sum",
]

SUPPORTED_SCHEME_ORDERS = (2, 4, 6, 8, 10)


@dataclass(frozen=True)
class RieszOrder:
    """Fractional order ``alpha`` of a Riesz derivative.

    The default constructor accepts only ``1 < alpha < 2``. Use
    :meth:`relaxed` to admit ``alpha = 2`` for classical-limit checks.
    """

    alpha: float

    def __post_init__(self) -> None:
        a = float(self.alpha)
        object.__setattr__(self, "alpha", a)
        if not (1.0 < a < 2.0):
            if not (getattr(self, "_relaxed", False) and 1.0 < a <= 2.0):
                raise ValueError(f"alpha must lie in (1, 2), got {a!r}")

    @classmethod
    def relaxed(cls, alpha: float) -> "RieszOrder":
        """Build an order with ``alpha`` in ``(1, 2]``; meant for limit tests."""
        obj = cls.__new__(cls)
        object.__setattr__(obj, "_relaxed", True)
        obj.__init__(alpha)
        return obj

    @property
    def kappa_alpha(self) -> float:
        """``kappa_alpha = 1/2 sec(pi alpha / 2)``; negative on (1, 2)."""
        return 0.5 / math.cos(0.5 * math.pi * self.alpha)


def _as_order(order: RieszOrder | float) -> RieszOrder:
    return order if isinstance(order, RieszOrder) else RieszOrder(order)


@dataclass(frozen=True)
class CentredCoeffs:
    """Weights ``g_0..g_K`` for one ``alpha``. Symmetric, so index is ``|k|``."""

    alpha: float
    g: np.ndarray

    @property
    def K(self) -> int:
        return len(self.g) - 1


@dataclass(frozen=True)
class CompactCoeffs:
    scheme_order: int
    b: tuple[float, ...]

    @property
    def n(self) -> int:
        return self.scheme_order // 2


@dataclass(frozen=True)
class SeriesCoeffs:
    a: tuple[float, float, float, float]


def g_coeffs(order: RieszOrder | float, K: int) -> CentredCoeffs:
    """Fractional centred-difference weights by forward recursion.

    ``g_0 = Gamma(alpha+1) / Gamma(alpha/2+1)**2`` and
    ``g_k = (1 - (alpha+1)/(alpha/2+k)) g_{k-1}``.

    Parameters
    ----------
    order : RieszOrder or float
    K : int
        Largest index, ``K >= 0``.

    Returns
    -------
    CentredCoeffs
    """
    order = _as_order(order)
    if K < 0:
        raise ValueError("K must be non-negative")
    a = order.alpha
    k = np.arange(1, K + 1, dtype=float)
    factors = 1.0 - (a + 1.0) / (0.5 * a + k)
    g = np.empty(K + 1)
    g[0] = gamma(a + 1.0) / gamma(0.5 * a + 1.0) ** 2
    g[1:] = g[0] * np.cumprod(factors)
    return CentredCoeffs(alpha=a, g=g)


def b_coeffs(order: RieszOrder | float, scheme_order: int) -> CompactCoeffs:
    """Weights ``b_0..b_{n-1}`` of the order-``2n`` fractional-compact formula."""
    order = _as_order(order)
    if scheme_order not in SUPPORTED_SCHEME_ORDERS:
        raise ValueError(
            f"unsupported scheme order {scheme_order!r}; "
            f"expected one of {SUPPORTED_SCHEME_ORDERS}"
        )
    a = order.alpha
    full = (
        1.0,
        -a / 24.0,
        (11.0 / 2880.0 + a / 1152.0) * a,
        -(191.0 / 362880.0 + 11.0 * a / 69120.0 + a * a / 82944.0) * a,
        (
            2497.0 / 29030400.0
            + 10181.0 * a / 348364800.0
            + 11.0 * a**2 / 3317760.0
            + a**3 / 7962624.0
        )
        * a,
    )
    return CompactCoeffs(scheme_order=scheme_order, b=full[: scheme_order // 2])


def a_coeffs(order: RieszOrder | float) -> SeriesCoeffs:
    """First four coefficients of ``|2 sin(z/2)/z|**alpha`` in powers of ``z**2``."""
    a = _as_order(order).alpha
    return SeriesCoeffs(
        a=(
            1.0,
            -a / 24.0,
            (1.0 / 1920.0 + (a - 1.0) / 1152.0) * a,
            -(
                1.0 / 322560.0
                + (a - 1.0) / 46080.0
                + (a - 1.0) * (a - 2.0) / 82944.0
            )
            * a,
        )
    )


@dataclass(frozen=True)
class Theorem1Bounds:
    """Bound functions for the magnitudes of ``g_k`` and their tail sums.

    ``S`` is the positive constant ``-Gamma(a+1)/(Gamma(a/2-1) Gamma(a/2+3))``.
    ``P1, P2, Q1, Q2`` are taken with the sign that makes them positive,
    i.e. they carry ``+S``.
    """

    alpha: float
    S: float

    def lower_single(self, k: int | np.ndarray) -> np.ndarray | float:
        a = self.alpha
        return self.S * ((a + 4.0) / (a + 2.0 * np.asarray(k, float))) ** (2.0 * (a + 1.0))

    def upper_single(self, k: int | np.ndarray) -> np.ndarray | float:
        a = self.alpha
        return self.S * ((a + 6.0) / (a + 2.0 * (np.asarray(k, float) + 1.0))) ** (a + 1.0)

    def P1(self, m: int, n: int) -> float:
        a = self.alpha
        p = -(2.0 * a + 1.0)
        return self.S * ((a + 2 * n) ** p - (a + 2 * m + 2) ** p)

    def P2(self, m: int, n: int) -> float:
        a = self.alpha
        return self.S * ((a + 2 * n) ** (-a) - (a + 2 * m + 2) ** (-a))

    def Q1(self, n: int) -> float:
        a = self.alpha
        return self.S / (a + 2 * n) ** (2.0 * a + 1.0)

    def Q2(self, n: int) -> float:
        a = self.alpha
        return self.S / (a + 2 * n) ** a

    @property
    def lower_scale(self) -> float:
        """Factor ``(a+4)**(2(a+1)) / (2(2a+1))`` multiplying P1 and Q1."""
        a = self.alpha
        return (a + 4.0) ** (2.0 * (a + 1.0)) / (2.0 * (2.0 * a + 1.0))

    @property
    def upper_scale(self) -> float:
        """Factor ``(a+6)**(a+1) / (2a)`` multiplying P2 and Q2."""
        a = self.alpha
        return (a + 6.0) ** (a + 1.0) / (2.0 * a)

    def finite_sum_bounds(self, m: int, n: int) -> tuple[float, float]:
        return self.P1(m, n) * self.lower_scale, self.P2(m, n) * self.upper_scale

    def tail_sum_bounds(self, n: int) -> tuple[float, float]:
        return self.Q1(n) * self.lower_scale, self.Q2(n) * self.upper_scale

    def two_sided_bounds(self) -> tuple[float, float]:
        """Bounds on ``sum_{k != 0} |g_k|``, which equals ``g_0``."""
        a = self.alpha
        hi = 2.0 ** (1.0 + a) / math.pi
        return hi / (1.0 + a), hi


def theorem1_bounds(order: RieszOrder | float) -> Theorem1Bounds:
    a = _as_order(order).alpha
    S = -gamma(a + 1.0) / (gamma(0.5 * a - 1.0) * gamma(0.5 * a + 3.0))
    return Theorem1Bounds(alpha=a, S=S)


def partial_sum(c: CentredCoeffs, K: int) -> float:
    """Two-sided truncated sum ``g_0 + 2 sum_{k=1}^{K} g_k``."""
    if K > c.K:
        raise ValueError(f"K={K} exceeds available coefficients ({c.K})")
    return float(c.g[0] + 2.0 * math.fsum(c.g[1 : K + 1]))

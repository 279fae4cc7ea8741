"""Real-line gamma function with fixed Lanczos coefficients.

The coefficients are embedded in source so that every platform produces the
same bits; nothing here delegates to ``math.gamma``.
"""

from __future__ import annotations

import math

__all__ = ["PoleError", "GammaOverflowError", "gamma", "ln_gamma"]

# Lanczos approximation, g = 7, nine terms.
_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = 2.5066282746310002
_LN_SQRT_2PI = 0.91893853320467274

_EULER_GAMMA = 0.57721566490153286
_ZETA_SMALL = (
    1.6449340668482264,
    1.2020569031595943,
    1.0823232337111382,
    1.0369277551433699,
    1.0173430619844491,
    1.0083492773819228,
    1.0040773561979443,
    1.0020083928260822,
    1.0009945751278181,
    1.0004941886041195,
    1.0002460865533080,
)


def _zeta(k: int) -> float:
    if k <= 12:
        return _ZETA_SMALL[k - 2]
    return sum(n ** (-float(k)) for n in range(1, 40))


_LNG_SERIES = tuple((-1) ** k * _zeta(k) / k for k in range(2, 40))

# Largest x with finite Gamma(x) in IEEE double precision.
_GAMMA_XMAX = 171.61447887182298


class PoleError(ValueError):
    """Raised when Gamma is evaluated at zero or a negative integer."""


class GammaOverflowError(OverflowError):
    """Raised when Gamma(x) is not representable as a finite double."""


def _lanczos_series(z: float) -> float:
    # z is the shifted argument (x - 1)
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (z + i)
    return acc


def _sinpi(x: float) -> float:
    # exact reduction to [-1, 1] keeps sin(pi x) accurate near the poles
    r = x - 2.0 * round(0.5 * x)
    if r > 0.5:
        return math.sin(math.pi * (1.0 - r))
    if r < -0.5:
        return -math.sin(math.pi * (1.0 + r))
    return math.sin(math.pi * r)


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


def gamma(x: float) -> float:
    """Euler's Gamma function on the real line.

    Parameters
    ----------
    x : float
        Argument. Zero and the negative integers are poles.

    Returns
    -------
    float
        Gamma(x). Negative non-integer arguments go through the reflection
        identity ``Gamma(x) Gamma(1 - x) = pi / sin(pi x)``.

    Raises
    ------
    PoleError
        If ``x`` is zero or a negative integer.
    GammaOverflowError
        If the result exceeds the double-precision range.
    """
    x = float(x)
    if math.isnan(x):
        return math.nan
    if _is_nonpositive_integer(x):
        raise PoleError(f"gamma has a pole at x={x!r}")
    if x == math.floor(x) and x <= 23.0:
        # exact for small integers
        return float(math.factorial(int(x) - 1))
    if x < 0.5:
        s = _sinpi(x)
        g1 = gamma(1.0 - x)
        if math.isinf(g1):
            return 0.0
        return math.pi / (s * g1)
    if x > _GAMMA_XMAX:
        raise GammaOverflowError(f"gamma({x!r}) overflows double precision")
    z = x - 1.0
    t = z + _G + 0.5
    series = _lanczos_series(z)
    if x > 140.0:
        # split the power to keep t**(z+0.5) finite
        half = t ** (0.5 * (z + 0.5))
        return _SQRT_2PI * half * (half * math.exp(-t)) * series
    return _SQRT_2PI * t ** (z + 0.5) * math.exp(-t) * series


def _ln_gamma_1p(e: float) -> float:
    # ln Gamma(1 + e) = -gamma_E e + sum_k (-1)^k zeta(k) e^k / k, |e| < 1
    acc = 0.0
    p = e
    for c in _LNG_SERIES:
        p *= e
        acc += c * p
    return acc - _EULER_GAMMA * e


def ln_gamma(x: float) -> float:
    """Natural logarithm of Gamma for positive arguments.

    Parameters
    ----------
    x : float
        Positive argument.

    Returns
    -------
    float
        ``ln Gamma(x)``.

    Raises
    ------
    ValueError
        If ``x <= 0``.
    """
    x = float(x)
    if not x > 0.0:
        raise ValueError(f"ln_gamma requires x > 0, got {x!r}")
    if x == 1.0 or x == 2.0:
        return 0.0
    if x < 0.5:
        # ln Gamma(x) = ln Gamma(x + 1) - ln x
        return ln_gamma(x + 1.0) - math.log(x)
    if abs(x - 1.0) < 0.25:
        return _ln_gamma_1p(x - 1.0)
    if abs(x - 2.0) < 0.25:
        return _ln_gamma_1p(x - 2.0) + math.log1p(x - 2.0)
    if x < 3.0:
        # away from the roots at 1 and 2 the log of a value close to one is
        # better conditioned through log1p
        return math.log1p(gamma(x) - 1.0)
    z = x - 1.0
    t = z + _G + 0.5
    return _LN_SQRT_2PI + (z + 0.5) * math.log(t) - t + math.log(_lanczos_series(z))

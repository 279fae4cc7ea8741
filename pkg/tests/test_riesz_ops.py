import math

import mpmath
import numpy as np
import pytest

from rieszkit.coeffs import RieszOrder, g_coeffs
from rieszkit.golden import SCHEME4_REF, SCHEME10_REF
from rieszkit.linalg import banded_solve, toeplitz_matvec
from rieszkit.riesz_ops import (
    Grid1D,
    GridFn,
    GridTooSmallError,
    NonzeroBoundaryError,
    build_A,
    build_D,
    central_difference_power,
    centred_diff_apply,
    compact_stencil_apply,
    exact_riesz_symmetric_poly,
    riesz_derivative,
)

mpmath.mp.dps = 30
rng = np.random.default_rng(7)


def riesz_quadrature(m, alpha, x):
    """Riesz derivative of zero-extended x^m (1-x)^m by Caputo quadrature.

    u and u' vanish at both ends for m >= 2, so the Riemann-Liouville and
    Caputo forms coincide.
    """
    a = mpmath.mpf(alpha)
    x = mpmath.mpf(x)

    def u2(s):
        # second derivative of y^m (1-y)^m by the product rule
        return (
            m * (m - 1) * s ** (m - 2) * (1 - s) ** m
            - 2 * m * m * s ** (m - 1) * (1 - s) ** (m - 1)
            + m * (m - 1) * s**m * (1 - s) ** (m - 2)
        )

    # r = |x - s|^(2-a) absorbs the weak singularity of the kernel
    q = 1 / (2 - a)
    c = q / mpmath.gamma(2 - a)
    left = c * mpmath.quad(lambda r: u2(x - r**q), [0, x ** (2 - a)])
    right = c * mpmath.quad(lambda r: u2(x + r**q), [0, (1 - x) ** (2 - a)])
    return float(-(left + right) / (2 * mpmath.cos(mpmath.pi * a / 2)))


def test_grid():
    g = Grid1D(0.0, 2.0, 8)
    assert g.h == 0.25
    assert g.nodes[-1] == 2.0 and len(g.interior) == 7
    for bad in ((1.0, 0.0, 8), (0.0, 1.0, 3), (0.0, 1.0, 4.5)):
        with pytest.raises(ValueError):
            Grid1D(*bad)


def test_gridfn_shape():
    with pytest.raises(ValueError):
        GridFn(Grid1D(0, 1, 4), np.zeros(4))


def test_centred_zero_and_impulse():
    grid = Grid1D(0, 1, 4)
    assert np.all(centred_diff_apply(1.5, GridFn(grid, np.zeros(5))) == 0)
    g = g_coeffs(1.5, 2).g
    w = centred_diff_apply(1.5, GridFn(grid, np.array([0, 0, 1.0, 0, 0])))
    np.testing.assert_array_equal(w, [g[1], g[0], g[1]])


def test_centred_matches_elementwise_sum():
    M = 16
    grid = Grid1D(0, 1, M)
    v = np.r_[0.0, rng.standard_normal(M - 1), 0.0]
    g = g_coeffs(1.3, M).g
    ref = np.array([sum(g[abs(j - i)] * v[i] for i in range(M + 1)) for j in range(1, M)])
    got = centred_diff_apply(1.3, GridFn(grid, v))
    assert np.max(np.abs(got - ref)) <= 1e-14
    np.testing.assert_allclose(got, toeplitz_matvec(build_A(1.3, M), v[1:-1]), atol=1e-14)


def test_nonzero_boundary_rejected():
    grid = Grid1D(0, 1, 8)
    with pytest.raises(NonzeroBoundaryError):
        centred_diff_apply(1.5, GridFn.sample(grid, lambda x: x))


def test_build_A_limit_and_pd():
    A = build_A(RieszOrder.relaxed(2.0), 4).to_dense()
    np.testing.assert_allclose(A, [[2, -1, 0], [-1, 2, -1], [0, -1, 2]], atol=1e-15)
    assert np.all(np.linalg.eigvalsh(build_A(1.5, 16).to_dense()) > 0)


def test_build_D():
    D = build_D(1.2, 10).to_dense()
    assert np.allclose(np.diag(D), 0.9) and np.allclose(np.diag(D, 1), 0.05)
    np.testing.assert_allclose(D[1:-1].sum(axis=1), 1.0, rtol=1e-15)


def test_D_matches_pointwise_stencil():
    v = rng.standard_normal(15)
    D = build_D(1.7, 16)
    full = np.r_[0.0, v, 0.0]
    ref = v + 1.7 / 24 * (full[:-2] - 2 * full[1:-1] + full[2:])
    np.testing.assert_allclose(D.matvec(v), ref, atol=1e-15)
    np.testing.assert_allclose(compact_stencil_apply(1.7, full), ref, atol=1e-15)


def test_central_difference_power_binomial():
    v = np.zeros(9)
    v[4] = 1.0
    np.testing.assert_array_equal(central_difference_power(v, 2)[2:7], [1, -4, 6, -4, 1])
    np.testing.assert_array_equal(central_difference_power(v, 0), v)


@pytest.mark.parametrize("order", [2, 4, 6, 8, 10])
def test_zero_in_zero_out(order):
    grid = Grid1D(0, 1, 20)
    assert np.all(riesz_derivative(GridFn(grid, np.zeros(21)), 1.5, order).values == 0)


def test_scheme_errors():
    grid = Grid1D(0, 1, 8)
    u = GridFn.sample(grid, lambda x: x**4 * (1 - x) ** 4)
    with pytest.raises(ValueError):
        riesz_derivative(u, 1.5, 3)
    with pytest.raises(GridTooSmallError):
        riesz_derivative(u, 1.5, 10)


def test_scheme4_equals_banded_path():
    grid = Grid1D(0, 1, 40)
    u = GridFn.sample(grid, lambda x: np.sin(np.pi * x) ** 5)
    r = -toeplitz_matvec(build_A(1.4, 40), u.interior) / grid.h**1.4
    w = riesz_derivative(u, 1.4, 4).values
    assert np.max(np.abs(w - banded_solve(build_D(1.4, 40), r))) <= 1e-14


def test_scheme2_is_centred():
    grid = Grid1D(0, 1, 16)
    u = GridFn.sample(grid, lambda x: x**3 * (1 - x) ** 3)
    np.testing.assert_array_equal(riesz_derivative(u, 1.6, 2).values, -centred_diff_apply(1.6, u) / grid.h**1.6)


@pytest.mark.parametrize("m,alpha,x", [(2, 1.5, 0.3), (4, 1.1, 0.5), (4, 1.9, 0.2), (6, 1.3, 0.71), (10, 1.7, 0.5)])
def test_exact_formula_vs_quadrature(m, alpha, x):
    ref = riesz_quadrature(m, alpha, x)
    assert exact_riesz_symmetric_poly(m, alpha, x) == pytest.approx(ref, rel=1e-10, abs=1e-13)


@pytest.mark.parametrize("alpha", [1.2, 1.5, 1.8])
def test_exact_formula_m1_vs_monomial_rule(alpha):
    # RL derivative of x^p on (0, x) is Gamma(p+1)/Gamma(p+1-a) x^(p-a)
    x = 0.37
    G = math.gamma

    def side(y):
        return G(2) / G(2 - alpha) * y ** (1 - alpha) - G(3) / G(3 - alpha) * y ** (2 - alpha)

    ref = -(side(x) + side(1 - x)) / (2 * math.cos(math.pi * alpha / 2))
    assert exact_riesz_symmetric_poly(1, alpha, x) == pytest.approx(ref, rel=1e-13, abs=0)


def test_exact_formula_m2_expanded_form():
    # expanded family with 2n = 2: coefficients (2n)!(2n+l)!/(l!(2n-l)!)
    a, x = 1.4, 0.27
    total = 0.0
    for l in range(3):
        c = (-1) ** l * math.factorial(2) * math.factorial(2 + l) / (math.factorial(l) * math.factorial(2 - l) * math.gamma(3 + l - a))
        total += c * (x ** (2 + l - a) + (1 - x) ** (2 + l - a))
    assert exact_riesz_symmetric_poly(2, a, x) == pytest.approx(-total / (2 * math.cos(math.pi * a / 2)), rel=1e-12, abs=0)


def test_exact_formula_domain_and_symmetry():
    with pytest.raises(ValueError):
        exact_riesz_symmetric_poly(1, 1.5, 0.0)
    with pytest.raises(ValueError):
        exact_riesz_symmetric_poly(0, 1.5, 0.5)
    xs = np.linspace(0.01, 0.99, 25)
    v = exact_riesz_symmetric_poly(4, 1.5, xs)
    np.testing.assert_allclose(v, v[::-1], rtol=1e-12)
    assert exact_riesz_symmetric_poly(4, 1.5, 0.5) < 0


def test_classical_limit_alpha_two():
    M = 32
    grid = Grid1D(0, 1, M)
    u = GridFn.sample(grid, lambda x: x**4 * (1 - x) ** 2)
    w = riesz_derivative(u, RieszOrder.relaxed(2.0), 4).values
    n = M - 1
    lap = np.diag(-2.0 * np.ones(n)) + np.diag(np.ones(n - 1), 1) + np.diag(np.ones(n - 1), -1)
    ref = np.linalg.solve(np.eye(n) + lap / 12, lap @ u.interior) / grid.h**2
    assert np.max(np.abs(w - ref)) <= 1e-12 * np.max(np.abs(ref))


def test_scheme4_reference_spot():
    grid = Grid1D(0, 1, 20)
    u = GridFn.sample(grid, lambda x: x**4 * (1 - x) ** 4)
    w = riesz_derivative(u, 1.5, 4).values[9]
    E = abs(w - exact_riesz_symmetric_poly(4, 1.5, 0.5))
    assert E == pytest.approx(SCHEME4_REF[1.5][0][1], rel=5e-3, abs=0)


def test_scheme10_reference_spot():
    grid = Grid1D(0, 1, 30)
    u = GridFn.sample(grid, lambda x: x**10 * (1 - x) ** 10)
    w = riesz_derivative(u, 1.5, 10).values[14]
    E = abs(w - exact_riesz_symmetric_poly(10, 1.5, 0.5))
    assert E == pytest.approx(SCHEME10_REF[1.5][0][1], rel=5e-3, abs=0)

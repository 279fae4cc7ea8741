"""Executable property checks for coefficients, matrices and the solvers.

Every check returns a :class:`PropertyResult`; nothing raises on failure, so
a full report can be printed and a CLI exit code derived from it.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .coeffs import (
    RieszOrder,
    a_coeffs,
    g_coeffs,
    partial_sum,
    theorem1_bounds,
)
from .linalg import (
    BandedMatrix,
    banded_solve,
    cholesky_pd_check,
    gershgorin_interval,
    lu_factor,
    lu_solve,
    toeplitz_matvec,
    SymToeplitzMatrix,
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
from .telegraph import (
    TelegraphProblem,
    build_step_matrices,
    g_alpha_matrix,
    march,
    solve,
    stability_check,
)

TABLE_ALPHAS = (1.1, 1.3, 1.5, 1.7, 1.9)


@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: bool
    tolerance: str
    detail: str = ""
    seconds: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "passed", bool(self.passed))

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] {self.name} (tol: {self.tolerance}) {self.detail}".rstrip()


def _rng(seed: int = 20240611) -> np.random.Generator:
    return np.random.default_rng(seed)


def _h_inner(u: np.ndarray, v: np.ndarray, h: float) -> float:
    return h * float(np.dot(u, v))


# ---------------------------------------------------------------------------
# special functions


def check_gamma_recurrence(n: int = 100) -> PropertyResult:
    xs = _rng(1).uniform(0.1, 20.0, n)
    worst = max(abs(gamma(x + 1) - x * gamma(x)) / abs(gamma(x + 1)) for x in xs)
    return PropertyResult("gamma recurrence", worst <= 1e-12, "1e-12 rel", f"max={worst:.2e}")


def check_gamma_reflection(n: int = 100) -> PropertyResult:
    xs = _rng(2).uniform(-5.0, 0.0, n)
    xs = xs[np.abs(xs - np.round(xs)) > 1e-6]
    worst = max(abs(gamma(x) * gamma(1 - x) * math.sin(math.pi * x) / math.pi - 1.0) for x in xs)
    return PropertyResult("gamma reflection", worst <= 1e-11, "1e-11 rel", f"max={worst:.2e}")


def check_ln_gamma_consistency(n: int = 200) -> PropertyResult:
    xs = _rng(3).uniform(0.1, 30.0, n)
    worst = max(abs(math.exp(ln_gamma(x)) / gamma(x) - 1.0) for x in xs)
    return PropertyResult("exp(ln_gamma) == gamma", worst <= 1e-12, "1e-12 rel", f"max={worst:.2e}")


# ---------------------------------------------------------------------------
# coefficients


def check_sign_and_ordering(alphas=TABLE_ALPHAS, K: int = 2000) -> PropertyResult:
    ok = True
    for a in alphas:
        g = g_coeffs(a, K).g
        ok &= bool(g[0] > 0 and np.all(g[1:] < 0) and np.all(np.diff(g[1:]) > 0))
    return PropertyResult("g_k sign pattern and ordering", ok, "exact")


def check_bound_single(alphas=TABLE_ALPHAS, kmax: int = 200) -> PropertyResult:
    k = np.arange(3, kmax + 1)
    worst = math.inf
    for a in alphas:
        t = theorem1_bounds(a)
        g = np.abs(g_coeffs(a, kmax).g[k])
        lo, hi = t.lower_single(k), t.upper_single(k)
        worst = min(worst, float(np.min(g - lo)), float(np.min(hi - g)))
    return PropertyResult("|g_k| between single-index bounds, 3<=k<=200", worst > 0, "strict", f"min gap={worst:.2e}")


def check_bound_finite_sums(alphas=TABLE_ALPHAS, ns=(3, 5, 10), span: int = 500) -> PropertyResult:
    ok = True
    for a in alphas:
        t = theorem1_bounds(a)
        g = np.abs(g_coeffs(a, max(ns) + span + 1).g)
        for n in ns:
            sums = np.cumsum(g[n : n + span + 1])
            for j, m in enumerate(range(n, n + span + 1)):
                lo, hi = t.finite_sum_bounds(m, n)
                ok &= bool(lo < sums[j] < hi)
    return PropertyResult("finite sums of |g_k| between P1/P2 bounds", ok, "strict")


def check_bound_tail_sums(alphas=TABLE_ALPHAS, ns=(3, 5, 10), K: int = 10**6) -> PropertyResult:
    # the unknown remainder beyond K is itself bracketed by the Q bounds
    ok = True
    detail = []
    for a in alphas:
        t = theorem1_bounds(a)
        g = np.abs(g_coeffs(a, K).g)
        rem_lo, rem_hi = t.tail_sum_bounds(K + 1)
        for n in ns:
            part = math.fsum(g[n:])
            lo, hi = t.tail_sum_bounds(n)
            ok &= bool(part + rem_lo > lo and part + rem_hi < hi)
        detail.append(f"{a}")
    return PropertyResult("tail sums of |g_k| between Q1/Q2 bounds", ok, "truncation K=1e6 + remainder bound")


def check_g0_identity(alpha: float = 1.5, g: np.ndarray | None = None, K: int = 10**6) -> PropertyResult:
    """``sum_{k != 0} |g_k| = g_0`` up to the bracketed truncation remainder."""
    if g is None:
        g = g_coeffs(alpha, K).g
    K = len(g) - 1
    t = theorem1_bounds(alpha)
    rem_lo, rem_hi = t.tail_sum_bounds(K + 1)
    resid = g[0] - 2.0 * math.fsum(np.abs(g[1:]))
    slack = 1e-12 * g[0]
    ok = 2 * rem_lo - slack <= resid <= 2 * rem_hi + slack
    return PropertyResult(
        f"two-sided |g_k| sum equals g_0 (alpha={alpha})",
        ok,
        f"[{2 * rem_lo:.1e}, {2 * rem_hi:.1e}]",
        f"residual={resid:.3e}",
    )


def check_g0_bounds(alphas=None) -> PropertyResult:
    alphas = np.arange(1.05, 2.0, 0.05) if alphas is None else alphas
    ok = True
    for a in alphas:
        lo, hi = theorem1_bounds(a).two_sided_bounds()
        g0 = g_coeffs(a, 0).g[0]
        ok &= bool(lo <= g0 <= hi)
    return PropertyResult("g_0 within 2^(1+a)/((1+a)pi) .. 2^(1+a)/pi", ok, "exact")


def check_alpha_monotonicity(kmax: int = 50) -> PropertyResult:
    alphas = np.round(np.arange(1.05, 2.0, 0.05), 10)
    G = np.array([g_coeffs(a, kmax).g for a in alphas])
    d = np.diff(G, axis=0)
    idx = [0] + list(range(2, kmax + 1))
    ok = bool(np.all(d[:, idx] > 0) and np.all(d[:, 1] < 0))
    return PropertyResult("g_k increasing in alpha (k != 1), g_1 decreasing", ok, "strict, 0.05 grid")


def check_sum_to_zero(alphas=TABLE_ALPHAS, Ks=(10, 100, 1000, 10000)) -> PropertyResult:
    """Truncated two-sided sums: closed form ``|g_K|(2K-a)/a``, decreasing, inside twice the tail bounds."""
    ok = True
    worst = 0.0
    for a in alphas:
        c = g_coeffs(a, max(Ks))
        t = theorem1_bounds(a)
        prev = math.inf
        for K in Ks:
            s = partial_sum(c, K)
            closed = abs(c.g[K]) * (2 * K - a) / a
            lo, hi = t.tail_sum_bounds(K + 1)
            slack = 1e-13 * c.g[0]
            ok &= bool(2 * lo - slack <= s <= 2 * hi + slack and abs(s) < prev)
            worst = max(worst, abs(s - closed) / c.g[0])
            prev = abs(s)
    ok &= worst <= 1e-13
    return PropertyResult(
        "truncated two-sided sum tends to zero",
        ok,
        "closed form to 1e-13 g_0; inside 2x tail bounds",
        f"max dev={worst:.1e} g_0",
    )


def check_series_coeffs(alphas=TABLE_ALPHAS, z: float = 0.1) -> PropertyResult:
    worst = 0.0
    for a in alphas:
        c = a_coeffs(a).a
        series = sum(c[p] * z ** (2 * p) for p in range(4))
        exact = abs(2 * math.sin(z / 2) / z) ** a
        worst = max(worst, abs(series - exact) / z**8)
    return PropertyResult("series coefficients a_p match generating function", worst <= 5.0, "5 z^8 at z=0.1", f"max/z^8={worst:.2e}")


def check_exp_inequalities() -> PropertyResult:
    x1 = np.linspace(1e-6, 1 - 1e-6, 100001)
    x2 = np.linspace(1e-6, 0.7968, 100001)
    ok = bool(np.all(1 - x1 < np.exp(-x1)) and np.all(1 - x2 > np.exp(-2 * x2)))
    return PropertyResult("scalar exponential inequalities", ok, "dense sampling")


# ---------------------------------------------------------------------------
# linear algebra


def check_toeplitz_matvec(sizes=range(1, 65)) -> PropertyResult:
    rng = _rng(4)
    worst = 0.0
    for n in sizes:
        t = SymToeplitzMatrix(rng.standard_normal(n))
        v = rng.standard_normal(n)
        ref = np.array([sum(t.first_row[abs(i - j)] * v[j] for j in range(n)) for i in range(n)])
        for method in ("direct", "fft"):
            got = toeplitz_matvec(t, v, method)
            worst = max(worst, float(np.max(np.abs(got - ref)) / max(1.0, np.max(np.abs(ref)))))
    return PropertyResult("Toeplitz matvec equals elementwise sum", worst <= 1e-14, "1e-14 max-norm", f"max={worst:.1e}")


def check_pd_rayleigh() -> PropertyResult:
    rng = _rng(5)
    ok = True
    for a in (1.1, 1.5, 1.9):
        A = build_A(a, 32).to_dense()
        if cholesky_pd_check(A):
            V = rng.standard_normal((100, 31))
            q = np.einsum("ij,jk,ik->i", V, A, V)
            ok &= bool(np.all(q > 0))
    return PropertyResult("Rayleigh quotients positive for certified PD matrices", ok, "strict")


def check_banded_vs_lu() -> PropertyResult:
    rng = _rng(6)
    worst = 0.0
    for a in TABLE_ALPHAS:
        for M in (8, 33, 128):
            D = build_D(a, M)
            rhs = rng.standard_normal(M - 1)
            x1 = banded_solve(D, rhs)
            x2 = lu_solve(lu_factor(D.to_dense()), rhs)
            worst = max(worst, float(np.max(np.abs(x1 - x2))))
    return PropertyResult("banded and dense LU solves agree", worst <= 1e-12, "1e-12 abs", f"max={worst:.1e}")


# ---------------------------------------------------------------------------
# grid operators


def check_classical_limit(alpha: float = 2.0, tol: float = 1e-12, M: int = 32) -> PropertyResult:
    """Scheme 4 at alpha near 2 against the compact second-derivative formula."""
    order = RieszOrder.relaxed(alpha)
    grid = Grid1D(0.0, 1.0, M)
    u = GridFn.sample(grid, lambda x: x**3 * (1 - x) ** 2 * (1 + x))
    w = riesz_derivative(u, order, 4).values
    n = M - 1
    lap = (np.diag(-2 * np.ones(n)) + np.diag(np.ones(n - 1), 1) + np.diag(np.ones(n - 1), -1))
    ref = np.linalg.solve(np.eye(n) + lap / 12.0, lap @ u.interior) / grid.h**2
    err = float(np.max(np.abs(w - ref)) / np.max(np.abs(ref)))
    return PropertyResult(f"classical limit of scheme 4 (alpha={alpha})", err <= tol, f"{tol:g} rel", f"max={err:.1e}")


def check_scheme2_is_centred() -> PropertyResult:
    grid = Grid1D(0.0, 1.0, 40)
    u = GridFn.sample(grid, lambda x: np.sin(np.pi * x) ** 3)
    worst = 0.0
    for a in TABLE_ALPHAS:
        w = riesz_derivative(u, a, 2).values
        r = -centred_diff_apply(a, u) / grid.h**a
        worst = max(worst, float(np.max(np.abs(w - r))))
    return PropertyResult("scheme 2 equals the centred difference", worst == 0.0, "exact", f"max={worst:.1e}")


def check_scheme4_paths(alphas=TABLE_ALPHAS, Ms=(20, 64)) -> PropertyResult:
    worst = 0.0
    for a in alphas:
        for M in Ms:
            grid = Grid1D(0.0, 1.0, M)
            u = GridFn.sample(grid, lambda x: x**4 * (1 - x) ** 4)
            w = riesz_derivative(u, a, 4).values
            r = -toeplitz_matvec(build_A(a, M), u.interior) / grid.h**a
            ref = banded_solve(build_D(a, M), r)
            worst = max(worst, float(np.max(np.abs(w - ref)) / np.max(np.abs(ref))))
    return PropertyResult("scheme 4 equals banded D_alpha solve of -A u / h^alpha", worst <= 1e-14, "1e-14 rel", f"max={worst:.1e}")


def check_exact_symmetry() -> PropertyResult:
    xs = np.linspace(0.05, 0.45, 9)
    ok = True
    for m in (1, 2, 4, 6, 10):
        for a in TABLE_ALPHAS:
            v1 = exact_riesz_symmetric_poly(m, a, xs)
            v2 = exact_riesz_symmetric_poly(m, a, 1 - xs)
            ok &= bool(np.allclose(v1, v2, rtol=1e-10, atol=1e-13))
            ok &= bool(exact_riesz_symmetric_poly(m, a, 0.5) < 0)
    return PropertyResult("exact derivative symmetric about 1/2 and negative there", ok, "1e-10 rel")


# observed-order ranges, rows above the round-off floor only
ECO_RANGES = {4: (3.95, 4.05), 6: (5.9, 6.05), 8: (7.85, 8.0), 10: (8.8, 10.5)}
ECO_GRIDS = {4: (20, 40, 80, 160), 6: (20, 24, 28, 32, 36), 8: (30, 34, 38, 42, 46), 10: (30, 34, 38)}


def check_order_verification() -> PropertyResult:
    from .harness import example1_sweep

    ok = True
    worst = []
    for order, Ms in ECO_GRIDS.items():
        lo, hi = ECO_RANGES[order]
        rows = example1_sweep(order, TABLE_ALPHAS, Ms)
        ecos = [r.eco for r in rows if r.eco is not None]
        ok &= all(lo <= e <= hi for e in ecos)
        worst.append(f"{order}:[{min(ecos):.3f},{max(ecos):.3f}]")
    return PropertyResult("observed orders of schemes 4-10", ok, str(ECO_RANGES), " ".join(worst))


# ---------------------------------------------------------------------------
# matrices of the telegraph scheme


def check_A_positive_definite() -> PropertyResult:
    ok = True
    for M in (8, 16, 32, 64):
        for a in np.round(np.arange(1.1, 2.0, 0.1), 10):
            ok &= cholesky_pd_check(build_A(a, M).to_dense())
    return PropertyResult("A_alpha positive definite", ok, "Cholesky")


def check_A_gershgorin() -> PropertyResult:
    ok = True
    for M in (8, 16, 32, 64):
        for a in np.round(np.arange(1.1, 2.0, 0.1), 10):
            iv = gershgorin_interval(build_A(a, M))
            g0 = g_coeffs(a, 0).g[0]
            ok &= bool(0 < iv.lower and iv.upper < g0 + 2 ** (1 + a) / math.pi)
    return PropertyResult("Gershgorin interval of A_alpha inside (0, g_0 + 2^(1+a)/pi)", ok, "strict")


def check_D_energy_bounds(n_vec: int = 100) -> PropertyResult:
    rng = _rng(7)
    ok = True
    for a in TABLE_ALPHAS:
        M = 40
        h = 1.0 / M
        D = build_D(a, M).to_dense()
        for v in rng.standard_normal((n_vec, M - 1)):
            q = _h_inner(D @ v, v, h)
            nv = _h_inner(v, v, h)
            ok &= bool((1 - a / 6) * nv <= q <= nv)
    return PropertyResult("(1-a/6)|v|^2 <= (D v, v) <= |v|^2", ok, "exact, 100 vectors")


def check_A_self_adjoint(n_vec: int = 100) -> PropertyResult:
    rng = _rng(8)
    worst = 0.0
    for a in TABLE_ALPHAS:
        M = 40
        h = 1.0 / M
        A = build_A(a, M).to_dense()
        U = rng.standard_normal((n_vec, M - 1))
        V = rng.standard_normal((n_vec, M - 1))
        for u, v in zip(U, V):
            l, r = _h_inner(A @ u, v, h), _h_inner(u, A @ v, h)
            scale = h * np.linalg.norm(A @ u) * np.linalg.norm(v)
            worst = max(worst, abs(l - r) / scale)
    return PropertyResult("(A u, v) = (u, A v)", worst <= 1e-12, "1e-12 rel", f"max={worst:.1e}")


def check_D_contraction(n_vec: int = 100) -> PropertyResult:
    rng = _rng(9)
    ok = True
    for a in TABLE_ALPHAS:
        M = 40
        h = 1.0 / M
        D = build_D(a, M).to_dense()
        for v in rng.standard_normal((n_vec, M - 1)):
            ok &= bool(_h_inner(D @ v, D @ v, h) <= _h_inner(v, v, h))
    return PropertyResult("|D v| <= |v|", ok, "exact, 100 vectors")


def _sample_stable_params(rng: np.random.Generator, count: int) -> list[tuple]:
    out = []
    while len(out) < count:
        a = float(rng.uniform(1.05, 1.95))
        nu = float(rng.uniform(0.1, 3.0))
        k2 = float(rng.uniform(0.1, 3.0))
        M = int(rng.integers(8, 65))
        N = int(rng.integers(2, 257))
        h, tau = 1.0 / M, 1.0 / N
        p = _homogeneous_problem(a, nu, k2)
        if stability_check(p, M, N).satisfied:
            out.append((a, nu, k2, h, tau, M))
    return out


def check_G_alpha_pd(count: int = 50) -> PropertyResult:
    ok = True
    for a, nu, k2, h, tau, M in _sample_stable_params(_rng(10), count):
        ok &= cholesky_pd_check(g_alpha_matrix(a, nu, k2, h, tau, M))
    return PropertyResult("G_alpha positive definite under the stability condition", ok, f"Cholesky, {count} sets")


def _homogeneous_problem(alpha: float, nu: float = 1.0, kappa_sq: float = 1.0) -> TelegraphProblem:
    zero = lambda x: np.zeros_like(np.asarray(x, float))  # noqa: E731
    return TelegraphProblem(
        nu=nu,
        kappa_sq=kappa_sq,
        order=RieszOrder(alpha),
        phi=zero,
        phi_t=zero,
        f=lambda x, t: np.zeros_like(np.asarray(x, float)),
        f_t0=zero,
        exact=lambda x, t: np.zeros_like(np.asarray(x, float)),
    )


def check_zero_data() -> PropertyResult:
    p = _homogeneous_problem(1.5)
    sol = solve(p, 16, 16)
    ok = bool(np.all(sol.values == 0.0))
    return PropertyResult("zero data gives the zero solution", ok, "exact")


def check_no_blowup(alpha: float = 1.5, M: int = 32, N: int = 1024, T: float = 1.0, factor: float = 100.0) -> PropertyResult:
    rng = _rng(11)
    p = _homogeneous_problem(alpha)
    rep = stability_check(p, M, N, T)
    m = build_step_matrices(p, M, N, T)
    u0 = 1e-3 * rng.standard_normal(M - 1)
    u1 = u0 + 1e-3 * rng.standard_normal(M - 1)
    U = march(m, u0, u1, N)
    h = 1.0 / M
    diffs = np.sqrt(h * np.sum(np.diff(U, axis=0) ** 2, axis=1))
    early = float(np.max(diffs[:5]))
    ok = rep.satisfied and float(np.max(diffs)) <= factor * early
    return PropertyResult(
        "no blow-up of level differences under the stability condition",
        ok,
        f"<= {factor:g} x early max, N={N}",
        f"ratio={np.max(diffs) / early:.3f}",
    )


def check_joint_order(lo: float = 3.9, hi: float = 4.6) -> PropertyResult:
    from .harness import example3_sweep

    rows = example3_sweep((1.2, 1.4, 1.6, 1.8), (4, 8, 16, 32, 64, 128), variant="table")
    ecos = [r.eco for r in rows if r.eco is not None]
    ok = all(lo <= e <= hi for e in ecos)
    return PropertyResult("telegraph joint fourth order", ok, f"[{lo}, {hi}]", f"range=[{min(ecos):.4f}, {max(ecos):.4f}]")


CHECKS: tuple[Callable[[], PropertyResult], ...] = (
    check_gamma_recurrence,
    check_gamma_reflection,
    check_ln_gamma_consistency,
    check_sign_and_ordering,
    check_bound_single,
    check_bound_finite_sums,
    check_bound_tail_sums,
    check_g0_identity,
    check_g0_bounds,
    check_alpha_monotonicity,
    check_sum_to_zero,
    check_series_coeffs,
    check_exp_inequalities,
    check_toeplitz_matvec,
    check_pd_rayleigh,
    check_banded_vs_lu,
    check_classical_limit,
    check_scheme2_is_centred,
    check_scheme4_paths,
    check_exact_symmetry,
    check_order_verification,
    check_A_positive_definite,
    check_A_gershgorin,
    check_D_energy_bounds,
    check_A_self_adjoint,
    check_D_contraction,
    check_G_alpha_pd,
    check_zero_data,
    check_no_blowup,
    check_joint_order,
)

SLOW = {check_bound_tail_sums, check_order_verification}


def run_all(quick: bool = False) -> list[PropertyResult]:
    results = []
    for chk in CHECKS:
        if quick and chk in SLOW:
            continue
        t0 = time.perf_counter()
        try:
            r = chk()
        except Exception as exc:  # a crashing check is a failed check
            r = PropertyResult(chk.__name__, False, "-", f"raised {type(exc).__name__}: {exc}")
        results.append(
            PropertyResult(r.name, r.passed, r.tolerance, r.detail, time.perf_counter() - t0)
        )
    return results

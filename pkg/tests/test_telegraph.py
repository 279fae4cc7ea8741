import math
import warnings

import numpy as np
import pytest
import sympy as sp

from rieszkit import telegraph as tg
from rieszkit.coeffs import RieszOrder, g_coeffs
from rieszkit.golden import TELEGRAPH_REF
from rieszkit.linalg import cholesky_pd_check, lu_solve
from rieszkit.riesz_ops import Grid1D, compact_stencil_apply
from rieszkit.telegraph import (
    StabilityWarning,
    TelegraphProblem,
    TimeGrid,
    bootstrap_first_level,
    build_step_matrices,
    example3_source,
    example3_problem,
    g_alpha_matrix,
    manufactured_problem,
    max_error,
    pde_residual,
    solve,
    stability_check,
    step,
    temporal_weights,
)


def zero_problem(alpha=1.5, nu=1.0, kappa_sq=1.0):
    z = lambda x: np.zeros_like(np.asarray(x, float))  # noqa: E731
    return TelegraphProblem(nu, kappa_sq, RieszOrder(alpha), z, z, lambda x, t: z(x), f_t0=z)


def table_run(alpha, M):
    p = manufactured_problem(alpha, m=6, time_factor="exp")
    return p, solve(p, M, M, first_level="exact")


def test_time_grid():
    g = TimeGrid(2.0, 8)
    assert g.tau == 0.25 and g.nodes[-1] == 2.0
    with pytest.raises(ValueError):
        TimeGrid(1.0, 1)
    with pytest.raises(ValueError):
        TimeGrid(0.0, 4)


def test_problem_validation():
    z = lambda x: 0 * x  # noqa: E731
    with pytest.raises(ValueError):
        TelegraphProblem(0.0, 1.0, RieszOrder(1.5), z, z, lambda x, t: 0 * x)
    with pytest.raises(ValueError):
        TelegraphProblem(1.0, 1.0, RieszOrder(1.5), lambda x: 1 + 0 * x, z, lambda x, t: 0 * x)


def test_step_expansion_matches_symbolic_collection():
    nu, tau, k = sp.symbols("nu tau k", positive=True)
    um, u0, up = sp.symbols("u_m u_0 u_p")
    d2 = up - 2 * u0 + um
    mud = up - um
    J = (nu**2 / 12 + 1 / tau**2) * d2 + nu / (2 * tau) * mud
    H = u0 + (d2 + nu * tau / 2 * mud) / 12
    a = nu**2 / 12 + 1 / tau**2
    b = nu / (2 * tau)
    c1 = k * (sp.Rational(1, 12) + nu * tau / 24)
    c2 = k * sp.Rational(5, 6)
    c3 = k * (sp.Rational(1, 12) - nu * tau / 24)
    # D-part and A-part collected by level
    for expr, coeffs in ((J, (a - b, -2 * a, a + b)), (k * H, (c3, c2, c1))):
        poly = sp.Poly(sp.expand(expr), up, u0, um)
        got = (poly.coeff_monomial(um), poly.coeff_monomial(u0), poly.coeff_monomial(up))
        for g_, c in zip(got, coeffs):
            assert sp.simplify(g_ - c) == 0
    # numeric weights agree with the symbolic ones
    for nv, tv in ((1.0, 0.1), (2.5, 1 / 64)):
        Jn, Hn = temporal_weights(nv, tv)
        subs = {nu: nv, tau: tv}
        Jp = sp.Poly(sp.expand(J), up, u0, um)
        Hp = sp.Poly(sp.expand(H), up, u0, um)
        for i, s in enumerate((um, u0, up)):
            assert Jn[i] == pytest.approx(float(Jp.coeff_monomial(s).subs(subs)), rel=1e-14, abs=0)
            assert Hn[i] == pytest.approx(float(Hp.coeff_monomial(s).subs(subs)), rel=1e-14, abs=1e-16)


def test_step_matrices_scalars():
    p = zero_problem(1.5, nu=1.3, kappa_sq=0.7)
    m = build_step_matrices(p, 16, 20)
    k = 0.7 / (1 / 16) ** 1.5
    assert m.a == pytest.approx(1.3**2 / 12 + 400)
    assert m.b == pytest.approx(1.3 * 20 / 2)
    assert m.c1 == pytest.approx(k * (1 / 12 + 1.3 / 20 / 24))
    assert m.c2 == pytest.approx(k * 5 / 6)
    assert m.c3 == pytest.approx(k * (1 / 12 - 1.3 / 20 / 24))
    lhs = (m.a + m.b) * m.D + m.c1 * m.A
    np.testing.assert_allclose(m.P, 2 * m.a * m.D - m.c2 * m.A, rtol=1e-14)
    np.testing.assert_allclose(m.Q, -(m.a - m.b) * m.D - m.c3 * m.A, rtol=1e-14)
    x = np.linspace(1, 2, m.size)
    np.testing.assert_allclose(lu_solve(m.lhs, lhs @ x), x, rtol=1e-12)


def test_step_residual_against_unexpanded_operator():
    rng = np.random.default_rng(3)
    p = zero_problem(1.4, nu=0.8, kappa_sq=1.2)
    m = build_step_matrices(p, 24, 30)
    n = m.size
    u_prev, u_curr = rng.standard_normal(n), rng.standard_normal(n)
    fs = [rng.standard_normal(n + 2) * np.r_[0, np.ones(n), 0] for _ in range(3)]
    u_next = step(m, u_prev, u_curr, *fs)
    J, H = temporal_weights(0.8, m.tau)
    k = 1.2 / m.h**1.4
    levels = (u_prev, u_curr, u_next)
    Ju = sum(J[i] * levels[i] for i in range(3))
    Hu = sum(H[i] * levels[i] for i in range(3))
    Hf = sum(H[i] * fs[i] for i in range(3))
    lhs = m.D @ Ju + k * (m.A @ Hu)
    rhs = compact_stencil_apply(m.order, Hf)
    scale = np.max(np.abs(m.D @ Ju)) + np.max(np.abs(k * m.A @ Hu)) + np.max(np.abs(rhs))
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * scale


def test_zero_data():
    p = zero_problem()
    m = build_step_matrices(p, 16, 16)
    x = Grid1D(0, 1, 16).nodes
    assert np.all(bootstrap_first_level(p, m, x) == 0)
    z = np.zeros(15)
    assert np.all(step(m, z, z, np.zeros(17), np.zeros(17), np.zeros(17)) == 0)
    sol = solve(p, 16, 16)
    assert np.all(sol.values == 0)


def test_boundary_rows_zero_and_dict():
    p, sol = table_run(1.4, 8)
    assert np.all(sol.values[:, 0] == 0) and np.all(sol.values[:, -1] == 0)
    d = sol.to_dict()
    assert set(d) >= {"l", "L", "T", "M", "N", "alpha", "values", "stability"}
    assert len(d["values"]) == 9 and len(d["values"][0]) == 9


def test_matrices_factored_once(monkeypatch):
    calls = []
    real = tg.lu_factor
    monkeypatch.setattr(tg, "lu_factor", lambda a: calls.append(1) or real(a))
    solve(manufactured_problem(1.5, time_factor="exp"), 16, 40)
    assert len(calls) == 2  # step matrix and bootstrap matrix


def test_stability_examples():
    r = stability_check(zero_problem(1.5), 32, 32)
    h = tau = 1 / 32
    lhs = tau * h**-1.5 / (tau / 12 + 1 / tau)
    assert r.lhs == pytest.approx(lhs)
    assert r.rhs == pytest.approx((6 - 1.5) / (2 * g_coeffs(1.5, 0).g[0]))
    assert r.satisfied and r.margin == pytest.approx(r.rhs - r.lhs)
    assert r.proof_timestep_ok == (tau * (13 / 24 + tau / 4) <= math.sqrt(3) / 9)
    rhs = [stability_check(zero_problem(1.5, kappa_sq=k), 32, 32).rhs for k in (0.5, 1, 2)]
    assert rhs[0] > rhs[1] > rhs[2]
    z = lambda x: 0 * np.asarray(x, float)  # noqa: E731
    p2 = TelegraphProblem(1.0, 2.0, RieszOrder.relaxed(2.0), z, z, lambda x, t: z(x))
    assert stability_check(p2, 16, 16).rhs == pytest.approx(1 / 2.0)


def test_violated_condition_warns():
    p = manufactured_problem(1.9, time_factor="exp")
    assert not stability_check(p, 256, 2).satisfied
    with pytest.warns(StabilityWarning):
        solve(p, 256, 2)


def test_g_alpha_pd_under_condition():
    m = g_alpha_matrix(1.5, 1.0, 1.0, 1 / 32, 1 / 32, 32)
    assert cholesky_pd_check(m)


def test_example3_residual_selects_exp_squared():
    xs = np.linspace(0.05, 0.95, 17)
    ts = np.linspace(0, 1, 17)
    for alpha in (1.2, 1.5, 1.8):
        p = example3_problem(alpha)
        assert pde_residual(p, 6, "exp_sq", xs, ts) <= 1e-15
        assert pde_residual(p, 6, "exp", xs, ts) >= 1e-3


def test_given_source_equals_manufactured():
    xs = np.linspace(0, 1, 17)
    ts = np.linspace(0, 1, 17)
    for alpha in (1.2, 1.4, 1.6, 1.8):
        f1 = example3_source(alpha)
        f2 = manufactured_problem(alpha, 6, "exp_sq").f
        worst = max(np.max(np.abs(f1(xs, t) - f2(xs, t))) for t in ts)
        assert worst <= 1e-12


def test_f_t0_fallback():
    p = manufactured_problem(1.5, time_factor="exp_sq")
    q = TelegraphProblem(p.nu, p.kappa_sq, p.order, p.phi, p.phi_t, p.f)
    x = np.linspace(0, 1, 11)
    np.testing.assert_allclose(q.df_dt0(x, 1 / 32), p.f_t0(x), atol=1e-10)


def test_max_error_trivial():
    p, sol = table_run(1.5, 8)
    grid_vals = {round(t, 12): v for t, v in zip(sol.t, sol.values)}
    own = lambda x, t: grid_vals[round(t, 12)]  # noqa: E731
    assert max_error(sol, own) == 0.0
    assert max_error(sol, lambda x, t: own(x, t) + 1e-3) == pytest.approx(1e-3, rel=1e-9)


@pytest.mark.parametrize("alpha,M", [(1.2, 8), (1.4, 16), (1.2, 4)])
def test_telegraph_reference_spots(alpha, M):
    p, sol = table_run(alpha, M)
    ref = dict((r[0], r[1]) for r in TELEGRAPH_REF[alpha])[M]
    assert max_error(sol, p.exact) == pytest.approx(ref, rel=5e-3, abs=0)


def test_telegraph_reference_alpha18_eco():
    p32, s32 = table_run(1.8, 32)
    p64, s64 = table_run(1.8, 64)
    e32, e64 = max_error(s32, p32.exact), max_error(s64, p64.exact)
    assert e64 == pytest.approx(8.403641e-10, rel=5e-3, abs=0)
    assert math.log2(e32 / e64) == pytest.approx(4.0149, abs=0.01)


def test_bootstrap_first_level_accuracy():
    # the Taylor start sits well inside the global error budget and converges at least cubically
    errs = []
    for M in (16, 32, 64):
        p = manufactured_problem(1.6, time_factor="exp")
        m = build_step_matrices(p, M, M)
        x = Grid1D(0, 1, M).nodes
        u1 = bootstrap_first_level(p, m, x)
        errs.append(np.max(np.abs(u1 - p.exact(x, m.tau)[1:-1])))
    assert errs[1] <= 1.451435e-8
    assert math.log2(errs[1] / errs[2]) > 3.3


def test_nu_squared_bootstrap_local_error_second_order():
    # an O(tau^2) start-up error caps the global order at one
    errs = []
    for M in (32, 64):
        p = manufactured_problem(1.6, time_factor="exp", nu=0.5)
        m = build_step_matrices(p, M, M)
        x = Grid1D(0, 1, M).nodes
        u1 = bootstrap_first_level(p, m, x, form="nu-squared")
        errs.append(np.max(np.abs(u1 - p.exact(x, m.tau)[1:-1])))
    assert 1.5 < math.log2(errs[0] / errs[1]) < 2.5


def test_nu_squared_form_at_nu_sq_two_drops_A_phi():
    # with nu^2 = 2 the coefficient 2 - nu^2 vanishes
    p = manufactured_problem(1.5, time_factor="exp", nu=math.sqrt(2))
    m = build_step_matrices(p, 16, 16)
    x = Grid1D(0, 1, 16).nodes
    u1 = bootstrap_first_level(p, m, x, form="nu-squared")
    phi = p.phi(x)
    src = phi + m.tau / 6 * (6 - 3 * p.nu * m.tau + p.nu**2 * m.tau**2) * p.phi_t(x)
    src += m.tau**2 / 6 * (3 - p.nu * m.tau) * p.f(x, 0.0) + m.tau**3 / 6 * p.f_t0(x)
    np.testing.assert_allclose(u1, lu_solve(m.boot, compact_stencil_apply(m.order, src)), rtol=1e-10, atol=1e-16)

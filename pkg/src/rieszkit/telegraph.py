"""Fourth-order three-level scheme for the Riesz space-fractional telegraph
equation

    u_tt + nu u_t = kappa^2 d^alpha u / d|x|^alpha + f(x, t),   l < x < L,

with homogeneous Dirichlet data and ``u(x,0) = phi``, ``u_t(x,0) = phi_t``.

Space uses the fourth-order compact operator ``D^{-1} (-A / h^alpha)``; time
uses the compact operators ``H_t`` and ``J_t`` built from the undivided
stencils ``delta_t^2 u^s = u^{s+1} - 2u^s + u^{s-1}`` and
``mu_t delta_t u^s = u^{s+1} - u^{s-1}``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np

from .coeffs import RieszOrder, _as_order, g_coeffs
from .linalg import DenseFactorization, lu_factor, lu_solve
from .riesz_ops import Grid1D, build_A, build_D, compact_stencil_apply, exact_riesz_symmetric_poly

__all__ = [
    "TimeGrid",
    "TelegraphProblem",
    "StepMatrices",
    "StabilityReport",
    "Solution",
    "StabilityWarning",
    "temporal_weights",
    "build_step_matrices",
    "stability_check",
    "g_alpha_matrix",
    "bootstrap_first_level",
    "step",
    "march",
    "solve",
    "max_error",
    "example3_problem",
    "example3_source",
    "manufactured_problem",
    "pde_residual",
]

ScalarField = Callable[[np.ndarray, float], np.ndarray]
Profile = Callable[[np.ndarray], np.ndarray]


class StabilityWarning(UserWarning):
    """Raised (as a warning) when the sufficient stability condition fails."""


@dataclass(frozen=True)
class TimeGrid:
    T: float
    N: int

    def __post_init__(self) -> None:
        if not self.T > 0:
            raise ValueError("need T > 0")
        if int(self.N) != self.N or self.N < 2:
            raise ValueError("need an integer N >= 2")

    @property
    def tau(self) -> float:
        return self.T / self.N

    @property
    def nodes(self) -> np.ndarray:
        return self.tau * np.arange(self.N + 1)


@dataclass(frozen=True)
class TelegraphProblem:
    """Data of one telegraph problem.

    ``f`` and ``exact`` take ``(x, t)`` with ``x`` an array and ``t`` a
    scalar. ``f_t0`` is ``df/dt`` at ``t = 0``; when it is ``None`` a
    fourth-order central difference in time is substituted.
    """

    nu: float
    kappa_sq: float
    order: RieszOrder
    phi: Profile
    phi_t: Profile
    f: ScalarField
    l: float = 0.0
    L: float = 1.0
    f_t0: Profile | None = None
    exact: ScalarField | None = None
    name: str = "custom"

    def __post_init__(self) -> None:
        object.__setattr__(self, "order", _as_order(self.order))
        if not self.nu > 0:
            raise ValueError("damping nu must be positive")
        ends = np.abs(np.asarray(self.phi(np.array([self.l, self.L])), float))
        if np.max(ends) > 1e-14:
            raise ValueError("initial value must vanish at both endpoints")

    @property
    def alpha(self) -> float:
        return self.order.alpha

    def df_dt0(self, x: np.ndarray, tau: float) -> np.ndarray:
        if self.f_t0 is not None:
            return np.asarray(self.f_t0(x), float)
        d = max(tau / 64.0, 1e-5)
        f = self.f
        return (-f(x, 2 * d) + 8 * f(x, d) - 8 * f(x, -d) + f(x, -2 * d)) / (12.0 * d)


def temporal_weights(nu: float, tau: float) -> tuple[np.ndarray, np.ndarray]:
    """Level weights of ``J_t`` and ``H_t`` on ``(s-1, s, s+1)``.

    ``J_t = (nu^2/12 + 1/tau^2) delta_t^2 + nu/(2 tau) mu_t delta_t`` and
    ``H_t = 1 + (delta_t^2 + (nu tau / 2) mu_t delta_t) / 12``.
    """
    d2 = np.array([1.0, -2.0, 1.0])
    mud = np.array([-1.0, 0.0, 1.0])
    ident = np.array([0.0, 1.0, 0.0])
    J = (nu**2 / 12.0 + 1.0 / tau**2) * d2 + nu / (2.0 * tau) * mud
    H = ident + (d2 + 0.5 * nu * tau * mud) / 12.0
    return J, H


@dataclass(frozen=True)
class StepMatrices:
    """Time-independent matrices of the scheme, factored once.

    The step reads ``lhs u^{s+1} = P u^s + Q u^{s-1} + D H_t f^s`` with
    ``lhs = (a+b) D + c1 A``, ``P = 2a D - c2 A``, ``Q = -(a-b) D - c3 A``.
    """

    order: RieszOrder
    nu: float
    kappa_sq: float
    h: float
    tau: float
    a: float
    b: float
    c1: float
    c2: float
    c3: float
    H: np.ndarray
    D: np.ndarray
    A: np.ndarray
    P: np.ndarray
    Q: np.ndarray
    lhs: DenseFactorization
    boot_scale: float
    boot: DenseFactorization

    @property
    def size(self) -> int:
        return self.D.shape[0]


def build_step_matrices(p: TelegraphProblem, M: int, N: int, T: float = 1.0) -> StepMatrices:
    grid = Grid1D(p.l, p.L, M)
    tau = TimeGrid(T, N).tau
    h = grid.h
    D = build_D(p.order, M).to_dense()
    A = build_A(p.order, M).to_dense()
    J, H = temporal_weights(p.nu, tau)
    k = p.kappa_sq / h**p.alpha
    # collect D J_t u + k A H_t u level by level
    lhs = J[2] * D + k * H[2] * A
    P = -(J[1] * D + k * H[1] * A)
    Q = -(J[0] * D + k * H[0] * A)
    a = p.nu**2 / 12.0 + 1.0 / tau**2
    b = p.nu / (2.0 * tau)
    boot_scale = p.kappa_sq * tau**2 / (6.0 * h**p.alpha)
    return StepMatrices(
        order=p.order,
        nu=p.nu,
        kappa_sq=p.kappa_sq,
        h=h,
        tau=tau,
        a=a,
        b=b,
        c1=k * H[2],
        c2=k * H[1],
        c3=k * H[0],
        H=H,
        D=D,
        A=A,
        P=P,
        Q=Q,
        lhs=lu_factor(lhs),
        boot_scale=boot_scale,
        boot=lu_factor(D + boot_scale * A),
    )


@dataclass(frozen=True)
class StabilityReport:
    lhs: float
    rhs: float
    satisfied: bool
    margin: float
    proof_timestep_ok: bool

    def as_dict(self) -> dict:
        return {
            "lhs": float(self.lhs),
            "rhs": float(self.rhs),
            "satisfied": bool(self.satisfied),
            "margin": float(self.margin),
            "proof_timestep_ok": bool(self.proof_timestep_ok),
        }


def stability_check(p: TelegraphProblem, M: int, N: int, T: float = 1.0) -> StabilityReport:
    """Evaluate the sufficient stability condition

    ``(tau/h^alpha) (tau nu^2/12 + 1/tau)^{-1} <= (6 - alpha) / (2 kappa^2 g_0)``

    and, separately, the time-step restriction used in the convergence
    argument, ``tau (13/24 + nu tau / 4) <= sqrt(3)/9``.
    """
    h = (p.L - p.l) / M
    tau = T / N
    g0 = g_coeffs(p.order, 0).g[0]
    lhs = (tau / h**p.alpha) / (tau * p.nu**2 / 12.0 + 1.0 / tau)
    rhs = (6.0 - p.alpha) / (2.0 * p.kappa_sq * g0)
    proof_ok = tau * (13.0 / 24.0 + p.nu * tau / 4.0) <= math.sqrt(3.0) / 9.0
    return StabilityReport(lhs=lhs, rhs=rhs, satisfied=lhs <= rhs, margin=rhs - lhs, proof_timestep_ok=proof_ok)


def g_alpha_matrix(order: RieszOrder | float, nu: float, kappa_sq: float, h: float, tau: float, M: int) -> np.ndarray:
    """``D - (tau kappa^2 / (6 h^alpha)) (tau nu^2/12 + 1/tau)^{-1} A`` as a dense matrix."""
    order = _as_order(order)
    D = build_D(order, M).to_dense()
    A = build_A(order, M).to_dense()
    s = tau * kappa_sq / (6.0 * h**order.alpha) / (tau * nu**2 / 12.0 + 1.0 / tau)
    return D - s * A


def _compact(m: StepMatrices, v: np.ndarray) -> np.ndarray:
    # full-grid vectors see the end samples; interior vectors get zero ghosts
    v = np.asarray(v, float)
    if v.shape[0] == m.size + 2:
        return compact_stencil_apply(m.order, v)
    if v.shape[0] == m.size:
        return m.D @ v
    raise ValueError(f"vector of length {v.shape[0]} does not fit {m.size} interior nodes")


BootstrapForm = Literal["derived", "nu-squared"]


def bootstrap_first_level(
    p: TelegraphProblem,
    m: StepMatrices,
    x: np.ndarray,
    form: BootstrapForm = "derived",
) -> np.ndarray:
    """Approximate ``u(., tau)`` from a third-order Taylor expansion.

    Solves ``(D + s A) u1 = D[phi + (tau/6)(6 - 3 nu tau + nu^2 tau^2) phi_t
    + (tau^2/6)(3 - nu tau) f(.,0) + (tau^3/6) f_t(.,0)] - s c A phi`` with
    ``s = kappa^2 tau^2 / (6 h^alpha)``.

    Parameters
    ----------
    p : TelegraphProblem
    m : StepMatrices
    x : ndarray
        All grid nodes, ``x_0..x_M``.
    form : {"derived", "nu-squared"}
        ``"derived"`` uses ``c = 2 - nu tau``, which is what the Taylor
        expansion produces. ``"nu-squared"`` uses ``c = 2 - nu^2`` and only
        reaches first order; it is kept for comparison.
    """
    tau, nu = m.tau, p.nu
    if form == "derived":
        c = 2.0 - nu * tau
    elif form == "nu-squared":
        c = 2.0 - nu**2
    else:
        raise ValueError(f"unknown bootstrap form {form!r}")
    phi = np.asarray(p.phi(x), float)
    phi_t = np.asarray(p.phi_t(x), float)
    src = (
        phi
        + tau / 6.0 * (6.0 - 3.0 * nu * tau + nu**2 * tau**2) * phi_t
        + tau**2 / 6.0 * (3.0 - nu * tau) * np.asarray(p.f(x, 0.0), float)
        + tau**3 / 6.0 * p.df_dt0(x, tau)
    )
    rhs = _compact(m, src) - m.boot_scale * c * (m.A @ phi[1:-1])
    return lu_solve(m.boot, rhs)


def step(
    m: StepMatrices,
    u_prev: np.ndarray,
    u_curr: np.ndarray,
    f_prev: np.ndarray,
    f_curr: np.ndarray,
    f_next: np.ndarray,
) -> np.ndarray:
    """Advance one level.

    ``u_prev`` and ``u_curr`` live on interior nodes. The source samples
    may be interior vectors or full-grid vectors; full-grid samples let the
    compact stencil see the source at the end nodes, which keeps the scheme
    consistent in the first and last rows.
    """
    if u_prev.shape[0] != m.size or u_curr.shape[0] != m.size:
        raise ValueError("dimension mismatch")
    H = m.H
    hf = H[0] * np.asarray(f_prev, float) + H[1] * np.asarray(f_curr, float) + H[2] * np.asarray(f_next, float)
    rhs = m.P @ u_curr + m.Q @ u_prev + _compact(m, hf)
    return lu_solve(m.lhs, rhs)


def march(
    m: StepMatrices,
    u0: np.ndarray,
    u1: np.ndarray,
    N: int,
    source: Callable[[int], np.ndarray] | None = None,
) -> np.ndarray:
    """Run levels ``2..N`` from interior vectors ``u0, u1``.

    ``source(s)`` returns the source at level ``s`` (interior or full grid);
    ``None`` means a homogeneous problem. Returns an ``(N+1, size)`` array.
    """
    out = np.empty((N + 1, m.size))
    out[0], out[1] = u0, u1
    if source is None:
        zero = np.zeros(m.size)
        fp = fc = fn = zero
    else:
        fp, fc = source(0), source(1)
    for s in range(1, N):
        if source is not None:
            fn = source(s + 1)
        out[s + 1] = step(m, out[s - 1], out[s], fp, fc, fn)
        if source is not None:
            fp, fc = fc, fn
    return out


@dataclass(frozen=True)
class Solution:
    grid: Grid1D
    time: TimeGrid
    alpha: float
    values: np.ndarray  # shape (N+1, M+1), boundary columns zero
    stability: StabilityReport
    first_level: str = "bootstrap"
    meta: dict = field(default_factory=dict)

    @property
    def t(self) -> np.ndarray:
        return self.time.nodes

    def to_dict(self) -> dict:
        return {
            "l": self.grid.l,
            "L": self.grid.L,
            "T": self.time.T,
            "M": self.grid.M,
            "N": self.time.N,
            "alpha": self.alpha,
            "values": self.values.tolist(),
            "stability": self.stability.as_dict(),
        }


FirstLevel = Literal["bootstrap", "exact"]


def solve(
    p: TelegraphProblem,
    M: int,
    N: int,
    T: float = 1.0,
    first_level: FirstLevel = "bootstrap",
    bootstrap_form: BootstrapForm = "derived",
) -> Solution:
    """Run the scheme on ``M`` cells and ``N`` steps up to time ``T``.

    Parameters
    ----------
    first_level : {"bootstrap", "exact"}
        How ``u^1`` is obtained. ``"exact"`` samples ``p.exact`` at
        ``t = tau`` and isolates the three-level recursion from the
        start-up error.
    bootstrap_form : {"derived", "nu-squared"}
        Passed to :func:`bootstrap_first_level`.

    Warns
    -----
    StabilityWarning
        If the sufficient stability condition does not hold.
    """
    grid = Grid1D(p.l, p.L, M)
    tg = TimeGrid(T, N)
    report = stability_check(p, M, N, T)
    if not report.satisfied:
        warnings.warn(
            f"stability condition violated (lhs={report.lhs:.4g} > rhs={report.rhs:.4g})",
            StabilityWarning,
            stacklevel=2,
        )
    m = build_step_matrices(p, M, N, T)
    x = grid.nodes
    t = tg.nodes
    u0 = np.asarray(p.phi(x), float)[1:-1]
    if first_level == "bootstrap":
        u1 = bootstrap_first_level(p, m, x, bootstrap_form)
    elif first_level == "exact":
        if p.exact is None:
            raise ValueError("first_level='exact' needs an exact solution")
        u1 = np.asarray(p.exact(x, t[1]), float)[1:-1]
    else:
        raise ValueError(f"unknown first_level {first_level!r}")
    interior = march(m, u0, u1, N, source=lambda s: np.asarray(p.f(x, t[s]), float))
    values = np.zeros((N + 1, M + 1))
    values[:, 1:-1] = interior
    return Solution(grid=grid, time=tg, alpha=p.alpha, values=values, stability=report, first_level=first_level)


def max_error(sol: Solution, exact: ScalarField) -> float:
    """``max_{j,s} |u(x_j, t_s) - u_j^s|`` over all nodes and levels."""
    x = sol.grid.nodes
    ref = np.array([np.asarray(exact(x, ts), float) * np.ones_like(x) for ts in sol.t])
    return float(np.max(np.abs(ref - sol.values)))


# ---------------------------------------------------------------------------
# Test problems on [0, 1]


def _bump(m: int) -> Profile:
    return lambda x: np.asarray(x, float) ** m * (1.0 - np.asarray(x, float)) ** m


_TIME_FACTORS: dict[str, tuple[Callable[[float], float], ...]] = {
    # T, T', T'', T''' as functions of t
    "exp": (math.exp, math.exp, math.exp, math.exp),
    "exp_sq": (
        lambda t: math.exp(t * t),
        lambda t: 2 * t * math.exp(t * t),
        lambda t: (2 + 4 * t * t) * math.exp(t * t),
        lambda t: (12 * t + 8 * t**3) * math.exp(t * t),
    ),
}


def manufactured_problem(
    alpha: float | RieszOrder,
    m: int = 6,
    time_factor: str = "exp_sq",
    nu: float = 1.0,
    kappa_sq: float = 1.0,
) -> TelegraphProblem:
    """Problem with exact solution ``T(t) x^m (1-x)^m`` on [0, 1].

    The source is ``(T'' + nu T') w - kappa^2 T R_m`` where ``R_m`` is the
    closed-form Riesz derivative of the bump ``w``.
    """
    order = _as_order(alpha)
    if time_factor not in _TIME_FACTORS:
        raise ValueError(f"time_factor must be one of {sorted(_TIME_FACTORS)}")
    T0, T1, T2, T3 = _TIME_FACTORS[time_factor]
    w = _bump(m)

    def R(x):
        return exact_riesz_symmetric_poly(m, order, np.asarray(x, float))

    def f(x, t):
        return (T2(t) + nu * T1(t)) * w(x) - kappa_sq * T0(t) * R(x)

    def f_t0(x):
        return (T3(0.0) + nu * T2(0.0)) * w(x) - kappa_sq * T1(0.0) * R(x)

    return TelegraphProblem(
        nu=nu,
        kappa_sq=kappa_sq,
        order=order,
        phi=lambda x: T0(0.0) * w(x),
        phi_t=lambda x: T1(0.0) * w(x),
        f=f,
        f_t0=f_t0,
        exact=lambda x, t: T0(t) * w(x),
        name=f"manufactured:m={m},T={time_factor}",
    )


def example3_source(alpha: float) -> ScalarField:
    """Source term of the benchmark problem, transcribed term by term."""
    from .specfun import gamma

    coeffs = (1, -6, 15, -20, 15, -6, 1)
    sec = 1.0 / math.cos(0.5 * math.pi * alpha)

    def f(x, t):
        x = np.asarray(x, float)
        et = math.exp(t * t)
        brace = np.zeros_like(x)
        for i, c in enumerate(coeffs):
            p = 6 + i - alpha
            brace = brace + c * gamma(7 + i) / gamma(7 + i - alpha) * (x**p + (1.0 - x) ** p)
        return 2.0 * (2.0 * t * t + t + 1.0) * et * x**6 * (1.0 - x) ** 6 + 0.5 * et * sec * brace

    return f


def example3_problem(alpha: float | RieszOrder, exact_factor: str = "exp_sq") -> TelegraphProblem:
    """Benchmark problem with the given source (nu = kappa^2 = 1, [0, 1]).

    ``exact_factor`` selects the candidate exact solution
    ``x^6 (1-x)^6 T(t)``; only ``"exp_sq"`` satisfies the equation with the
    given source (see :func:`pde_residual`).
    """
    order = _as_order(alpha)
    T0, T1, _, _ = _TIME_FACTORS[exact_factor]
    w = _bump(6)
    return TelegraphProblem(
        nu=1.0,
        kappa_sq=1.0,
        order=order,
        phi=lambda x: T0(0.0) * w(x),
        phi_t=lambda x: T1(0.0) * w(x),
        f=example3_source(order.alpha),
        # d/dt of the given source at t = 0
        f_t0=lambda x: 2.0 * w(x),
        exact=lambda x, t: T0(t) * w(x),
        name=f"example3:T={exact_factor}",
    )


def pde_residual(
    p: TelegraphProblem,
    m: int,
    time_factor: str,
    xs: np.ndarray,
    ts: np.ndarray,
) -> float:
    """Max of ``|u_tt + nu u_t - kappa^2 R u - f|`` for ``u = T(t) x^m (1-x)^m``.

    All derivatives of the candidate are analytic, so a zero residual means
    the candidate solves the equation with the source of ``p``.
    """
    T0, T1, T2, _ = _TIME_FACTORS[time_factor]
    w = _bump(m)(xs)
    R = exact_riesz_symmetric_poly(m, p.order, xs)
    worst = 0.0
    for t in ts:
        lhs = (T2(t) + p.nu * T1(t)) * w - p.kappa_sq * T0(t) * R
        worst = max(worst, float(np.max(np.abs(lhs - p.f(xs, t)))))
    return worst

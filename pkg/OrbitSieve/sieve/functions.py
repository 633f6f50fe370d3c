#!/usr/bin/env python

"""
Tables of the DHR sieve functions sigma, F and f on a uniform grid, and the
integral form of the weighted sieve bound evaluated on them.
"""

import math

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import integrate, special

from OrbitSieve import log
from OrbitSieve.core.config import get_config
from OrbitSieve.core.errors import ConstraintError, DomainError, GridError
from OrbitSieve.sieve.bounds import RBoundResult, beta_for


config = get_config()


@dataclass(frozen=True)
class SieveFunctionTable:
    kappa: float
    alpha_k: Optional[float]
    beta_k: float
    step: float
    u: np.ndarray
    sigma: np.ndarray
    F: Optional[np.ndarray] = None
    f: Optional[np.ndarray] = None

    def __post_init__(self):
        for arr in (self.u, self.sigma, self.F, self.f):
            if arr is not None:
                arr.setflags(write=False)

    @property
    def u_max(self):
        return float(self.u[-1])

    @property
    def closed_form_only(self):
        return self.F is None

    def index_of(self, u):
        """Grid index of the node u, which must lie on the grid."""
        i = int(round(u / self.step)) - 1
        if i < 0 or i >= len(self.u) or abs(self.u[i] - u) > 1e-9:
            raise GridError(f'u={u} is not a node of the grid with step {self.step}')
        return i

    def to_frame_columns(self):
        cols = {'u': self.u, 'sigma': self.sigma}
        if not self.closed_form_only:
            cols['F'] = self.F
            cols['f'] = self.f
        return cols


def a_kappa(kappa):
    """(2 e^gamma)^kappa Gamma(kappa + 1)"""
    return (2 * math.exp(np.euler_gamma)) ** kappa * float(special.gamma(kappa + 1))


def _grid(u_max, h):
    if h is None:
        h = config.getfloat('sieve', 'step')
    if u_max is None:
        u_max = config.getfloat('sieve', 'u_max')
    if h <= 0 or h > 0.5:
        raise DomainError(f'Step must lie in (0, 0.5], got {h}')
    if abs(1 / h - round(1 / h)) > 1e-9:
        raise GridError(f'1/step must be an integer so that the delays land on nodes, got step={h}')
    if u_max <= 2:
        raise DomainError(f'u_max must exceed 2, got {u_max}')
    n = int(round(u_max / h))
    return np.arange(n + 1) * h, h


def _solve_sigma(kappa, u, h):
    """sigma on the full grid including u = 0."""
    A = a_kappa(kappa)
    d2 = int(round(2 / h))
    n = len(u) - 1
    sigma = np.zeros(n + 1)
    sigma[:d2 + 1] = u[:d2 + 1] ** kappa / A

    # Each window of length 2 only looks back at the previous one.
    start = d2
    while start < n:
        stop = min(start + d2, n)
        idx = np.arange(start, stop + 1)
        slope = -kappa * u[idx] ** (-kappa - 1) * sigma[idx - d2]
        g = sigma[start] / u[start] ** kappa + integrate.cumulative_trapezoid(slope, dx=h, initial=0)
        sigma[idx[1:]] = u[idx[1:]] ** kappa * g[1:]
        start = stop
    return sigma


def solve_sigma(kappa, u_max=None, h=None):
    if kappa <= 0:
        raise DomainError(f'kappa must be positive, got {kappa}')
    u, h = _grid(u_max, h)
    sigma = _solve_sigma(kappa, u, h)
    log.debug(f'sigma_{kappa} solved on (0, {u[-1]:.3f}] with step {h}')
    return SieveFunctionTable(kappa=kappa, alpha_k=None, beta_k=beta_for(kappa), step=h,
                              u=u[1:].copy(), sigma=sigma[1:].copy())


def solve_F_f(kappa, alpha_k, beta_k, sigma_table):
    """Step the coupled delay equations for F and f past alpha_k and beta_k."""
    if sigma_table.kappa != kappa:
        raise GridError(f'sigma table is for kappa={sigma_table.kappa}, not {kappa}')
    if not alpha_k >= beta_k >= 2:
        raise DomainError(f'Need alpha_k >= beta_k >= 2, got alpha_k={alpha_k}, beta_k={beta_k}')
    if alpha_k > sigma_table.u_max:
        raise GridError(f'alpha_k={alpha_k} lies beyond the table end {sigma_table.u_max}')

    h = sigma_table.step
    u = np.concatenate(([0.0], sigma_table.u))
    sigma = np.concatenate(([0.0], sigma_table.sigma))
    n = len(u) - 1
    d1 = int(round(1 / h))
    i_alpha = int(math.ceil(alpha_k / h - 1e-9))
    i_beta = int(math.ceil(beta_k / h - 1e-9))

    # Node 0 is never read: the delays reach back at most to u = 1.
    F = np.full(n + 1, np.nan)
    F[1:i_alpha + 1] = np.maximum(1 / sigma[1:i_alpha + 1], 1.0)
    f = np.zeros(n + 1)

    uF = np.zeros(n + 1)
    uF[1:] = u[1:] * F[1:]
    uf = np.zeros(n + 1)
    # The accumulators carry the raw trapezoid sums. The stored values are
    # clamped so that F stays nonincreasing and >= 1, f nondecreasing and <= 1.
    for i in range(i_beta, n):
        if i + 1 > i_alpha:
            uF[i + 1] = uF[i] + h / 2 * (f[i - d1] + f[i + 1 - d1])
            F[i + 1] = min(max(uF[i + 1] / u[i + 1], 1.0), F[i])
        uf[i + 1] = uf[i] + h / 2 * (F[i - d1] + F[i + 1 - d1])
        f[i + 1] = max(min(uf[i + 1] / u[i + 1], 1.0), f[i])

    if not np.all(np.isfinite(F[1:])) or not np.all(np.isfinite(f[1:])):
        raise GridError('Non-finite values in the F/f table')

    return SieveFunctionTable(kappa=kappa, alpha_k=alpha_k, beta_k=beta_k, step=h,
                              u=sigma_table.u.copy(), sigma=sigma_table.sigma.copy(),
                              F=F[1:].copy(), f=f[1:].copy())


def solve_tables(kappa, alpha_k=None, beta_k=None, u_max=None, h=None):
    """sigma always, F and f when alpha_k is known.

    For the linear sieve alpha_1 comes from configuration; other dimensions
    need alpha_k passed in, or the table is left in closed-form-only mode.
    """
    if beta_k is None:
        beta_k = beta_for(kappa)
    if alpha_k is None and kappa == 1:
        alpha_k = config.getfloat('sieve', 'alpha_1')

    table = solve_sigma(kappa, u_max, h)
    if alpha_k is None:
        log.warning(f'No alpha_k for kappa={kappa}; only sigma is tabulated, R comes from the closed-form m')
        return SieveFunctionTable(kappa=kappa, alpha_k=None, beta_k=beta_k, step=table.step,
                                  u=table.u.copy(), sigma=table.sigma.copy())
    return solve_F_f(kappa, alpha_k, beta_k, table)


def sigma_branch_jump(table):
    """Mismatch at u = 2 between linear extrapolations from the closed-form and the stepped side.

    sigma is C^1 across the join, so on a consistent grid this is O(step^2).
    """
    i = table.index_of(2.0)
    if i < 2 or i + 2 >= len(table.sigma):
        raise GridError('Need two nodes on each side of u = 2')
    s = table.sigma
    left = 2 * s[i - 1] - s[i - 2]
    right = 2 * s[i + 1] - s[i + 2]
    return abs(float(left - right))


def r_bound_integral(params, table, u, v):
    """tau u / alpha - 1 + kappa / f(tau v) * int_1^{v/u} F(tau v - s)(1 - u s / v) ds / s"""
    if table.closed_form_only:
        raise ConstraintError('The integral bound needs F and f; table is closed-form only')
    if params.kappa != table.kappa:
        raise ConstraintError(f'Parameters are for kappa={params.kappa}, table for kappa={table.kappa}')

    tau, alpha, kappa = params.tau, params.alpha, params.kappa
    if not 1 / tau < u <= v:
        raise ConstraintError(f'Need 1/tau < u <= v, got 1/tau={1 / tau:.4f}, u={u}, v={v}')
    if not tau * v > table.beta_k:
        raise ConstraintError(f'Need tau v > beta_k={table.beta_k}, got tau v={tau * v:.4f}')
    if tau * v > table.u_max:
        raise ConstraintError(f'tau v = {tau * v:.4f} lies beyond the table end {table.u_max}')

    f_tv = float(np.interp(tau * v, table.u, table.f))
    if f_tv <= 0:
        raise ConstraintError(f'f(tau v) = {f_tv} is not positive')

    def integrand(s):
        return float(np.interp(tau * v - s, table.u, table.F)) * (1 - u * s / v) / s

    upper = v / u
    integral = 0.0
    if upper > 1:
        integral, _ = integrate.quad(integrand, 1, upper, epsabs=config.getfloat('sieve', 'quad_tol'), limit=200)
    return tau * u / alpha - 1 + kappa / f_tv * integral


def minimize_r_bound(params, table, grid):
    """Least integral bound over (u, v) pairs; pairs violating the constraints are skipped."""
    best = None
    for u, v in grid:
        try:
            value = r_bound_integral(params, table, u, v)
        except ConstraintError:
            continue
        if best is None or value < best[0]:
            best = (value, u, v)
    if best is None:
        raise ConstraintError('No (u, v) pair in the grid satisfies the constraints')

    value, u, v = best
    log.debug(f'integral bound {value:.4f} at u={u}, v={v}')
    return RBoundResult(zeta_star=None, m_star=value, R=math.floor(value) + 1, provenance='integral_bound', u=u, v=v)

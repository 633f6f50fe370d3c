#!/usr/bin/env python

"""
Exponents of distribution and saturation numbers R from the weighted sieve.
"""

import math

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import optimize

from OrbitSieve import log
from OrbitSieve.core.config import get_config
from OrbitSieve.core.errors import DomainError, InvalidGapError


config = get_config()

# beta_kappa of the DHR sieve for the dimensions used here.
BETA_KAPPA = {1: 2.0, 3: 6.6408, 4: 9.0722, 5: 11.5347}

SPECTRAL_GAPS = {
    'gamburd': 5 / 6,
    'kim_sarnak': 39 / 64,
    'selberg': 1 / 2,
}

MODES = ('classic', 'projective')

PROVENANCES = ('closed_form_m', 'integral_bound')

# (degree, kappa) per example
EXAMPLES = {'A': (1, 1), 'B': (2, 4), 'C': (3, 5), 'D': (3, 3)}

# Linear sieve results with Richert's weights, reported next to the computed kappa = 1 rows.
RICHERT_R = {'classic': 13, 'projective': 7}

SATURATION_ROWS = (
    ('A', 'gamburd'), ('B', 'gamburd'), ('C', 'gamburd'), ('D', 'kim_sarnak'), ('D-Selberg', 'selberg'),
)


@dataclass(frozen=True)
class SieveParams:
    delta: float
    theta: float
    degree: int
    kappa: float
    mode: str
    alpha: float
    tau: float

    @classmethod
    def build(cls, delta, theta, degree, kappa, mode='classic'):
        alpha = exponent_of_distribution(delta, theta, degree, mode)
        return cls(delta=delta, theta=theta, degree=degree, kappa=kappa, mode=mode, alpha=alpha,
                   tau=tau_parameter(alpha, degree, delta))

    @property
    def beta_k(self):
        return beta_for(self.kappa)


@dataclass(frozen=True)
class RBoundResult:
    """m_star comes from the closed form at zeta_star, or from the integral bound at (u, v)."""
    zeta_star: Optional[float]
    m_star: float
    R: int
    provenance: str = 'closed_form_m'
    u: Optional[float] = None
    v: Optional[float] = None

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise DomainError(f'provenance must be one of {PROVENANCES}, got {self.provenance!r}')


def beta_for(kappa):
    if kappa not in BETA_KAPPA:
        raise DomainError(f'No tabulated beta_kappa for kappa={kappa}; known {sorted(BETA_KAPPA)}')
    return BETA_KAPPA[kappa]


def exponent_of_distribution(delta, theta, degree, mode='classic'):
    """(delta - theta) / deg f for the line stabilizer, half of it for the point stabilizer."""
    if mode not in MODES:
        raise DomainError(f'mode must be one of {MODES}, got {mode!r}')
    if degree < 1:
        raise DomainError(f'Degree must be >= 1, got {degree}')
    if not 0.5 < delta <= 1:
        raise DomainError(f'delta must lie in (1/2, 1], got {delta}')
    if not 0.5 <= theta < delta:
        raise InvalidGapError(f'Spectral gap must satisfy 1/2 <= theta < delta, got theta={theta}, delta={delta}')

    projective = (delta - theta) / degree
    return projective if mode == 'projective' else projective / 2


def tau_parameter(alpha, degree, delta):
    return alpha * degree / delta


def _m(alpha, kappa, beta_k, zeta):
    return ((1 + zeta - zeta / beta_k) / alpha - 1
            + (kappa + zeta) * np.log(beta_k / zeta) - kappa + zeta * kappa / beta_k)


def m_zeta(alpha, kappa, beta_k, zeta):
    """The closed-form majorant m_{alpha,kappa}(zeta) of the weighted sieve bound."""
    if not 0 < zeta < beta_k:
        raise DomainError(f'zeta must lie in (0, {beta_k}), got {zeta}')
    if alpha <= 0:
        raise DomainError(f'alpha must be positive, got {alpha}')
    return float(_m(alpha, kappa, beta_k, zeta))


def optimize_R(alpha, kappa, beta_k, margin=None, tol=None):
    """Minimise m over zeta and return the smallest admissible R."""
    if margin is None:
        margin = config.getfloat('sieve', 'zeta_margin')
    if tol is None:
        tol = config.getfloat('sieve', 'zeta_tol')
    if alpha <= 0:
        raise DomainError(f'alpha must be positive, got {alpha}')

    grid = np.linspace(margin, beta_k - margin, 4001)
    values = _m(alpha, kappa, beta_k, grid)
    i = int(np.argmin(values))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    res = optimize.minimize_scalar(lambda z: _m(alpha, kappa, beta_k, z), bounds=(lo, hi), method='bounded',
                                   options={'xatol': tol * 1e-2})
    zeta_star, m_star = (float(res.x), float(res.fun)) if res.fun <= values[i] else (float(grid[i]), float(values[i]))

    # R must exceed m strictly.
    R = math.floor(m_star) + 1
    log.debug(f'alpha={alpha:.6g}, kappa={kappa}: m({zeta_star:.4f}) = {m_star:.4f}, R = {R}')
    return RBoundResult(zeta_star=zeta_star, m_star=m_star, R=R)


def saturation_row(example, gap, mode, delta=1.0, omit_degree=False):
    """One saturation bound.

    omit_degree=True divides delta - theta by 1 instead of deg f, which
    reproduces the older published values; those agree with the corrected
    ones only for Example A.
    """
    letter = example[0]
    degree, kappa = EXAMPLES[letter]
    theta = SPECTRAL_GAPS[gap]
    alpha = exponent_of_distribution(delta, theta, 1 if omit_degree else degree, mode)
    result = optimize_R(alpha, kappa, beta_for(kappa))
    literature = RICHERT_R[mode] if kappa == 1 else None
    return {
        'example': example,
        'mode': mode,
        'theta': theta,
        'alpha': alpha,
        'kappa': kappa,
        'zeta_star': result.zeta_star,
        'm_star': result.m_star,
        'R': result.R,
        'delta_star': delta_threshold(example, mode, theta, delta=delta, omit_degree=omit_degree),
        'literature_R': literature,
        'provenance': 'richert_weights' if literature else result.provenance,
        'degree_omitted': omit_degree,
    }


def saturation_table(delta=1.0, omit_degree=False):
    """All classic and projective saturation bounds, classic rows first."""
    return [saturation_row(example, gap, mode, delta, omit_degree)
            for mode in MODES for example, gap in SATURATION_ROWS]


def delta_threshold(example, mode, theta, delta=1.0, omit_degree=False, iterations=40):
    """Smallest delta' at which the value of R found at delta still holds.

    R is non-increasing in delta, so the threshold is found by bisection on
    (theta, delta]; below it R increments.
    """
    degree, kappa = EXAMPLES[example[0]]
    if omit_degree:
        degree = 1
    beta_k = beta_for(kappa)

    def R_at(d):
        return optimize_R(exponent_of_distribution(d, theta, degree, mode), kappa, beta_k).R

    target = R_at(delta)
    lo, hi = theta + 1e-9, delta
    if R_at(lo) <= target:
        return lo
    for _ in range(iterations):
        mid = (lo + hi) / 2
        if R_at(mid) <= target:
            hi = mid
        else:
            lo = mid
    return hi

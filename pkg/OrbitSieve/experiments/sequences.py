#!/usr/bin/env python

"""
The weighted sequence A(T) of coordinate-function values on an orbit ball,
its distribution in residue classes and its almost-prime counts.
"""

import math

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

import sympy

from OrbitSieve import log
from OrbitSieve.core.config import get_config
from OrbitSieve.core.errors import ConfigurationError, DomainError
from OrbitSieve.modular.modular import bad_primes
from OrbitSieve.orbits.orbits import base_norm, orbit_ball
from OrbitSieve.experiments.coordinates import coordinate_value


config = get_config()

FACTOR_CACHE_SIZE = config.getint('experiments', 'factor_cache_size')


@dataclass(frozen=True)
class SequenceA:
    T: float
    support: dict  # n -> a_n, n > 0
    mass: int
    N: int
    zeros: int
    kappa: int
    degree: int = 1
    function: str = ''
    spec_name: str = ''
    excluded_primes: frozenset = field(default_factory=frozenset)


@dataclass(frozen=True)
class DistributionReport:
    rows: list


@lru_cache(maxsize=FACTOR_CACHE_SIZE)
def _factor(n):
    return sympy.factorint(n)


def prime_divisor_count(n, distinct=False):
    """Omega(n), or omega(n) with distinct=True."""
    if n == 0:
        raise DomainError('0 has no prime factorisation')
    factors = _factor(abs(int(n)))
    return len(factors) if distinct else sum(factors.values())


def build_sequence(spec, f, T, slack=None, cap=None):
    """a_n = #{x in the orbit ball of radius T : |f(x)| = n}."""
    if T <= base_norm(spec):
        raise DomainError(f'T={T} must exceed the base norm {base_norm(spec):.4f}')

    ball = orbit_ball(spec, T, slack=slack, cap=cap)
    support = Counter()
    zeros = 0
    for x in ball.points:
        n = abs(coordinate_value(f, x))
        if n == 0:
            zeros += 1
        else:
            support[n] += 1

    seq = SequenceA(T=T, support=dict(sorted(support.items())), mass=sum(support.values()),
                    N=max(support, default=0), zeros=zeros, kappa=f.kappa, degree=f.degree, function=f.tag,
                    spec_name=spec.name, excluded_primes=frozenset(bad_primes(spec) | f.divisor_primes()))
    log.debug(f'{f.tag} on {spec.name}: |A| = {seq.mass}, N = {seq.N}, zeros = {zeros}')
    return seq


def mass_divisible(seq, q):
    """|A_q|"""
    return sum(a for n, a in seq.support.items() if n % q == 0)


def distribution_report(seq, densities, moduli=None):
    """Compare |A_q| with omega(q)|A| for each modulus.

    densities maps q to a LocalDensityValue computed for the same orbit and
    function. Moduli sharing a prime with the divisor or the bad primes are
    reported with flag bad_modulus and no prediction.
    """
    threshold = config.getfloat('experiments', 'rel_error_threshold')
    for q, value in densities.items():
        if value.function and value.function != seq.function:
            raise ConfigurationError(f'Density for q={q} was computed for {value.function}, not {seq.function}')
        if value.spec_name and value.spec_name != seq.spec_name:
            raise ConfigurationError(f'Density for q={q} was computed on {value.spec_name}, not {seq.spec_name}')

    if moduli is None:
        moduli = densities.keys()

    rows = []
    for q in sorted(set(int(q) for q in moduli)):
        mass_q = seq.mass if q == 1 else mass_divisible(seq, q)
        if q > 1 and seq.excluded_primes & set(sympy.primefactors(q)):
            rows.append({'q': q, 'mass_q': mass_q, 'predicted': None, 'abs_error': None,
                         'rel_error': None, 'flag': 'bad_modulus'})
            continue
        if q == 1:
            predicted = float(seq.mass)
        elif q in densities:
            predicted = float(densities[q].omega) * seq.mass
        else:
            raise ConfigurationError(f'No local density supplied for q={q}')

        abs_error = abs(mass_q - predicted)
        rel_error = abs_error / predicted if predicted else (0.0 if mass_q == 0 else math.inf)
        rows.append({'q': q, 'mass_q': mass_q, 'predicted': predicted, 'abs_error': abs_error,
                     'rel_error': rel_error, 'flag': 'ok' if rel_error <= threshold else 'deviates'})
    return DistributionReport(rows=rows)


def almost_prime_count(seq, R, distinct=False):
    """Weighted count of n in A with at most R prime factors, and that count
    scaled by (log T)^kappa / |A|. R = None counts everything."""
    if seq.mass == 0:
        raise DomainError('Sequence is empty')
    if R is None:
        count = seq.mass
    else:
        count = sum(a for n, a in seq.support.items() if prime_divisor_count(n, distinct) <= R)
    return count, count * math.log(seq.T) ** seq.kappa / seq.mass


def almost_prime_table(seq, Rs, distinct=False):
    finite = sorted(set(R for R in Rs if R is not None))
    rows = []
    for R in finite + ([None] if None in Rs else []):
        count, ratio = almost_prime_count(seq, R, distinct)
        rows.append({'R': 'inf' if R is None else R, 'count': count, 'density_ratio': ratio})
    return rows


def sequence_summary(seq):
    """Totals of the sequence and the check N <= C T^deg."""
    bound = config.getfloat('experiments', 'archimedean_constant') * seq.T ** seq.degree
    return {
        'function': seq.function,
        'orbit': seq.spec_name,
        'T': seq.T,
        'mass': seq.mass,
        'N': seq.N,
        'zeros': seq.zeros,
        'archimedean_bound': bound,
        'archimedean_ok': seq.N <= bound,
    }

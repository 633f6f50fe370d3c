#!/usr/bin/env python

"""
Orbits of the base vector modulo a squarefree q, their projectivisation, and
the local densities omega(q) of a homogeneous coordinate function.

The point orbit realises the cosets of the point stabilizer of y mod q, the
line orbit those of the stabilizer of the line <y> mod q. Because f is
homogeneous, f(x) = 0 mod q depends on the line of x only, which makes the
two densities equal.
"""

import math

from collections import Counter, deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import sympy

from OrbitSieve import log
from OrbitSieve.core.config import get_config
from OrbitSieve.core.errors import BadModulusError, DomainError, InvalidModulusError, InvariantError, OutOfRangeError
from OrbitSieve.core.helpers import check_modulus, mat_vec_mod, reduce_matrix, prime_factors


config = get_config()

MODES = ('point', 'line')


@dataclass(frozen=True)
class ResidueVector:
    modulus: int
    entries: tuple

    def __post_init__(self):
        check_modulus(self.modulus)
        object.__setattr__(self, 'entries', tuple(int(v) % self.modulus for v in self.entries))


class LineCanonicalizer:
    """Canonical representative of the line through a vector mod q.

    Per prime p | q the first entry that is non-zero mod p is scaled to 1;
    the per-prime vectors are glued with the Chinese remainder idempotents.
    """
    def __init__(self, q):
        self.q = q
        self.primes = check_modulus(q)
        self._idempotents = [(q // p) * pow(q // p, -1, p) % q for p in self.primes]

    def __call__(self, x):
        combined = [0, 0, 0]
        for p, e in zip(self.primes, self._idempotents):
            r = [v % p for v in x]
            lead = next((v for v in r if v), None)
            if lead is None:
                raise InvariantError(f'{tuple(x)} vanishes mod {p} and spans no line')
            inv = pow(lead, -1, p)
            for i in range(3):
                combined[i] += (r[i] * inv % p) * e
        return tuple(v % self.q for v in combined)


@dataclass(frozen=True)
class ProjectiveLine:
    modulus: int
    representative: tuple

    @classmethod
    def through(cls, x, q):
        return cls(q, LineCanonicalizer(q)(x))


@dataclass(frozen=True)
class ModularOrbit:
    """Point and line orbit of the base vector mod q.

    Points and line representatives are stored as residue tuples.
    """
    modulus: int
    point_orbit: frozenset
    line_orbit: frozenset
    fiber_size: int
    spec_name: str = ''

    def residue_vectors(self):
        return [ResidueVector(self.modulus, x) for x in sorted(self.point_orbit)]

    def projective_lines(self):
        return [ProjectiveLine(self.modulus, x) for x in sorted(self.line_orbit)]


@dataclass(frozen=True)
class LocalDensityValue:
    modulus: int
    mode: str
    omega: Fraction
    numerator_points: int
    numerator_lines: int
    orbit_size: int
    function: str = ''
    spec_name: str = ''

    @property
    def vanishing_count(self):
        return self.numerator_points if self.mode == 'point' else self.numerator_lines

    @classmethod
    def trivial(cls, mode, function='', spec_name=''):
        """omega(1) = 1."""
        return cls(1, mode, Fraction(1), 1, 1, 1, function, spec_name)


def bad_primes(spec):
    """Primes dividing 2 * disc(F) * t, with t left out on the cone."""
    t = spec.form.level_value
    product = 2 * spec.form.discriminant * (t if t else 1)
    return set(prime_factors(abs(product)))


def orbit_mod_q(spec, q):
    """Closure of base mod q under the generators and their inverses mod q."""
    primes = check_modulus(q)
    if q < 2:
        raise InvalidModulusError(f'Modulus must be >= 2, got {q}')
    excluded = bad_primes(spec) & set(primes)
    if excluded:
        raise BadModulusError(f'Modulus {q} is divisible by bad primes {sorted(excluded)} of {spec.name}')
    for g in spec.generators:
        if math.gcd(g.determinant, q) != 1:
            raise BadModulusError(f'Generator {g.entries} is not invertible mod {q}')

    moves = [reduce_matrix(g.entries, q) for g in spec.generators]
    moves += [reduce_matrix(g.inverse().entries, q) for g in spec.generators]
    moves = list(dict.fromkeys(moves))

    start = tuple(v % q for v in spec.base)
    points = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for g in moves:
            y = mat_vec_mod(g, x, q)
            if y not in points:
                points.add(y)
                queue.append(y)

    canon = LineCanonicalizer(q)
    fibers = Counter(canon(x) for x in points)
    sizes = set(fibers.values())
    if len(sizes) != 1:
        raise InvariantError(f'Fibres of the line projection mod {q} have unequal sizes {sorted(sizes)}')
    fiber_size = sizes.pop()

    expected = math.prod((p - 1) ** 2 for p in primes) / 4 ** len(primes)
    if len(points) < expected:
        log.warning(f'{spec.name}: orbit mod {q} has only {len(points)} points; the image of the '
                    f'generators mod {q} looks small')
    log.debug(f'{spec.name}: mod {q} orbit has {len(points)} points on {len(fibers)} lines')

    return ModularOrbit(modulus=q, point_orbit=frozenset(points), line_orbit=frozenset(fibers),
                        fiber_size=fiber_size, spec_name=spec.name)


def vanishing_counts(morbit, f):
    """(#points, #lines) of the orbit mod q on which the raw polynomial of f vanishes."""
    q = morbit.modulus
    shared = f.divisor_primes() & set(prime_factors(q))
    if shared:
        raise BadModulusError(f'Modulus {q} shares primes {sorted(shared)} with the normalisation of {f.tag}')
    points = sum(1 for x in morbit.point_orbit if f.raw_mod(x, q) == 0)
    lines = sum(1 for x in morbit.line_orbit if f.raw_mod(x, q) == 0)
    return points, lines


def local_density(morbit, f, mode='line'):
    """omega(q) as an exact fraction, through the point or the line orbit."""
    if mode not in MODES:
        raise DomainError(f'mode must be one of {MODES}, got {mode!r}')
    points, lines = vanishing_counts(morbit, f)
    if mode == 'point':
        omega = Fraction(points, len(morbit.point_orbit))
        size = len(morbit.point_orbit)
    else:
        omega = Fraction(lines, len(morbit.line_orbit))
        size = len(morbit.line_orbit)
    return LocalDensityValue(modulus=morbit.modulus, mode=mode, omega=omega, numerator_points=points,
                             numerator_lines=lines, orbit_size=size, function=f.tag,
                             spec_name=morbit.spec_name)


# Discriminant and level of the form behind each example.
EXAMPLE_FORMS = {'A': (-1, 0), 'B': (-1, 0), 'C': (-1, 0), 'D': (-3, -1)}


def omega_reference(example, p, threshold=None, band_constant=None):
    """Closed-form omega(p) for Examples A-C, a band around 3/p for Example D.

    Only valid for p at least threshold and coprime to 60 * disc(F) * t.
    """
    if example not in EXAMPLE_FORMS:
        raise DomainError(f'Unknown example {example!r}')
    if threshold is None:
        threshold = config.getint('densities', 'reference_threshold')
    if band_constant is None:
        band_constant = config.getfloat('densities', 'band_constant')
    if not sympy.isprime(p):
        raise OutOfRangeError(f'{p} is not prime')
    disc, t = EXAMPLE_FORMS[example]
    if p < threshold or (60 * disc * (t if t else 1)) % p == 0:
        raise OutOfRangeError(f'Reference omega for Example {example} needs p >= {threshold} '
                              f'coprime to 60*disc*t, got {p}')

    if example == 'A':
        return Fraction(2, p + 1) if p % 4 == 1 else Fraction(0)
    if example == 'B':
        return Fraction(4, p + 1)
    if example == 'C':
        return Fraction(6, p + 1) if p % 4 == 1 else Fraction(4, p + 1)
    center = Fraction(3, p)
    radius = Fraction(band_constant).limit_denominator() / p ** 2
    return center - radius, center + radius


def reference_for_modulus(example, q):
    """Multiplicative extension of omega_reference; None when any prime is out of range."""
    value = Fraction(1)
    for p in prime_factors(q):
        try:
            ref = omega_reference(example, p)
        except OutOfRangeError:
            return None
        if isinstance(ref, tuple):
            return ref if len(prime_factors(q)) == 1 else None
        value *= ref
    return value


def _density_rows(spec, f, q):
    if q == 1:
        return [LocalDensityValue.trivial(mode, f.tag, spec.name) for mode in MODES]
    morbit = orbit_mod_q(spec, q)
    return [local_density(morbit, f, mode) for mode in MODES]


def density_table(spec, f, moduli, threads=1):
    """Point and line densities for every modulus, sorted by (q, mode).

    Each row carries the reference value (when one applies) and whether the
    computed omega matches it.
    """
    moduli = sorted(set(int(q) for q in moduli))
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        results = list(pool.map(lambda q: _density_rows(spec, f, q), moduli))

    rows = []
    for q, values in zip(moduli, results):
        reference = reference_for_modulus(f.example, q) if q > 1 else Fraction(1)
        for value in values:
            if reference is None:
                ref_text, flag = '', 'n/a'
            elif isinstance(reference, tuple):
                lo, hi = reference
                ref_text = f'[{float(lo):.10g},{float(hi):.10g}]'
                flag = 'match' if lo <= value.omega <= hi else 'mismatch'
            else:
                ref_text = str(reference)
                flag = 'match' if value.omega == reference else 'mismatch'
            rows.append({
                'q': q,
                'mode': value.mode,
                'orbit_size': value.orbit_size,
                'vanishing_count': value.vanishing_count,
                'omega_num': value.omega.numerator,
                'omega_den': value.omega.denominator,
                'reference_value': ref_text,
                'match_flag': flag,
            })
            if flag == 'mismatch':
                log.warning(f'{spec.name}/{f.tag}: omega({q}) = {value.omega} ({value.mode}) '
                            f'disagrees with reference {ref_text}')
    return rows


def local_density_product(omegas, z1, z, kappa):
    """prod_{z1 <= p <= z} 1/(1 - omega(p)) and the least K with
    product <= (log z / log z1)^kappa * (1 + K / log z1)."""
    if not 2 <= z1 < z:
        raise DomainError(f'Need 2 <= z1 < z, got z1={z1}, z={z}')
    product = 1.0
    for p, omega in omegas.items():
        if z1 <= p <= z:
            product /= 1 - float(omega)
    ratio = (math.log(z) / math.log(z1)) ** kappa
    needed_K = max(0.0, (product / ratio - 1) * math.log(z1))
    return product, needed_K


def sieve_dimension_estimate(omegas):
    """Average of p * omega(p) over the given primes."""
    if not omegas:
        raise DomainError('No densities given')
    return sum(p * float(w) for p, w in omegas.items()) / len(omegas)

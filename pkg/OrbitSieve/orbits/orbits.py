#!/usr/bin/env python

"""
Orbits y . Gamma of a base vector under finitely many integral isometries,
enumerated inside Euclidean balls.
"""

import math

from collections import deque
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from OrbitSieve import log
from OrbitSieve.core.config import get_config
from OrbitSieve.core.errors import (OrbitSpecError, ResourceCapError, DomainError,
                                    InsufficientDataError, NotAnIsometryError)
from OrbitSieve.core.helpers import as_vector, gcd3, mat_vec, norm_sq
from OrbitSieve.orbits.forms import TernaryForm, IsometryMatrix, evaluate_form, is_isometry


config = get_config()

CLOSURE_MODES = ('group', 'monoid')


@dataclass(frozen=True)
class OrbitSpec:
    """Base vector, generators and closure rule of an orbit.

    In group mode the closure uses every generator and its inverse, in
    monoid mode the generators only. slack overrides the configured BFS
    pruning factor for the mode.
    """
    form: TernaryForm
    base: tuple
    generators: tuple
    closure_mode: str = 'monoid'
    slack: float = None
    name: str = ''

    def __post_init__(self):
        try:
            base = as_vector(self.base)
        except (TypeError, ValueError) as e:
            raise OrbitSpecError(f'Invalid base vector: {e}')
        object.__setattr__(self, 'base', base)
        object.__setattr__(self, 'generators', tuple(
            g if isinstance(g, IsometryMatrix) else IsometryMatrix(g) for g in self.generators))

        if self.closure_mode not in CLOSURE_MODES:
            raise OrbitSpecError(f'closure_mode must be one of {CLOSURE_MODES}, got {self.closure_mode!r}')
        if gcd3(base) != 1:
            raise OrbitSpecError(f'Base vector {base} is not primitive')
        if evaluate_form(self.form, base) != self.form.level_value:
            raise OrbitSpecError(f'F{base} = {evaluate_form(self.form, base)} differs from the level '
                                 f'{self.form.level_value}')
        if not self.generators:
            raise OrbitSpecError('At least one generator is required')
        for g in self.generators:
            if not is_isometry(self.form, g.entries):
                raise NotAnIsometryError(f'g^T F g != F for generator {g.entries}')
            if g.determinant not in (1, -1):
                raise NotAnIsometryError(f'Generator {g.entries} has determinant {g.determinant}')

    @cached_property
    def moves(self):
        """Matrices applied at each BFS step."""
        matrices = [g.entries for g in self.generators]
        if self.closure_mode == 'group':
            matrices += [g.inverse().entries for g in self.generators]
        return tuple(dict.fromkeys(matrices))

    @property
    def level(self):
        return self.form.level_value

    def pruning_slack(self):
        if self.slack is not None:
            return float(self.slack)
        return config.getfloat('orbits', f'{self.closure_mode}_slack')


@dataclass(frozen=True)
class OrbitBall:
    """Orbit points of Euclidean norm below radius."""
    radius: float
    points: frozenset

    @property
    def count(self):
        return len(self.points)

    def sorted_points(self):
        return sorted(self.points)


def orbit_ball(spec, T, slack=None, canonical=False, cap=None):
    """Return the orbit points x with ||x|| < T.

    Breadth-first closure of the base vector, pruned at ||x|| >= slack*T;
    norms are not monotone along words in group mode, hence slack > 1 there.
    canonical replaces every point by its entrywise absolute value.
    """
    if T is None or T <= 0:
        raise DomainError(f'Radius must be positive, got {T}')
    if slack is None:
        slack = spec.pruning_slack()
    if cap is None:
        cap = config.getint('orbits', 'visited_cap')

    limit_sq = (slack * T) ** 2
    radius_sq = T * T
    moves = spec.moves

    visited = set()
    queue = deque()
    if norm_sq(spec.base) < limit_sq:
        visited.add(spec.base)
        queue.append(spec.base)

    while queue:
        x = queue.popleft()
        for g in moves:
            y = mat_vec(g, x)
            if y in visited or norm_sq(y) >= limit_sq:
                continue
            visited.add(y)
            if len(visited) > cap:
                raise ResourceCapError(f'Visited set exceeded the cap of {cap} points at radius {T}')
            queue.append(y)

    points = (x for x in visited if norm_sq(x) < radius_sq)
    if canonical:
        points = (tuple(abs(v) for v in x) for x in points)
    ball = OrbitBall(radius=T, points=frozenset(points))
    log.debug(f'Orbit {spec.name or spec.base}: {ball.count} points below {T} ({len(visited)} visited)')
    return ball


def count_samples(spec, radii, slack=None, cap=None):
    """(T, count) pairs for several radii from a single enumeration."""
    radii = sorted(set(float(T) for T in radii))
    if not radii:
        raise InsufficientDataError('No radii given')
    ball = orbit_ball(spec, radii[-1], slack=slack, cap=cap)
    norms = np.sqrt(np.array([norm_sq(x) for x in ball.points], dtype=float))
    return [(T, int((norms < T).sum())) for T in radii]


def estimate_delta(samples):
    """Least-squares slope of log(count) against log(T)."""
    valid = [(float(T), int(c)) for T, c in samples if T > 0 and c >= 1]
    radii = [T for T, _ in valid]
    if len(valid) < 2 or len(set(radii)) < 2:
        raise InsufficientDataError(f'Need at least two samples with distinct radii and counts >= 1, got {samples}')
    if len(set(radii)) != len(radii):
        raise InsufficientDataError(f'Radii must be distinct, got {radii}')

    log_T = np.log([T for T, _ in valid])
    log_count = np.log([c for _, c in valid])
    slope, _ = np.polyfit(log_T, log_count, 1)
    return float(slope)


def base_norm(spec):
    return math.sqrt(norm_sq(spec.base))

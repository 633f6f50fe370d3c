#!/usr/bin/env python

"""
Ternary integral quadratic forms and their integral isometries.
"""

import itertools

from dataclasses import dataclass, field

import numpy as np

from OrbitSieve import log
from OrbitSieve.core.config import get_config
from OrbitSieve.core.errors import InvalidFormError, NotAnIsometryError
from OrbitSieve.core.helpers import as_matrix, as_vector, determinant, integer_inverse


config = get_config()


@dataclass(frozen=True)
class TernaryForm:
    """Q(x) = x^T . gram . x with an integral symmetric Gram matrix.

    level_value is the value t taken on the orbit's base vector; the orbit
    lives on the level set Q = t (the cone when t = 0).
    """
    gram: tuple
    level_value: int = 0
    anisotropic: bool = False
    name: str = ''

    def __post_init__(self):
        try:
            gram = as_matrix(self.gram)
        except (TypeError, ValueError) as e:
            raise InvalidFormError(f'Gram matrix is not a 3x3 integer matrix: {e}')
        object.__setattr__(self, 'gram', gram)

        arr = np.array(gram, dtype=float)
        if not np.array_equal(arr, arr.T):
            raise InvalidFormError(f'Gram matrix {gram} is not symmetric')
        if self.discriminant == 0:
            raise InvalidFormError(f'Gram matrix {gram} is degenerate')
        eigenvalues = np.linalg.eigvalsh(arr)
        if (eigenvalues > 0).sum() != 2 or (eigenvalues < 0).sum() != 1:
            raise InvalidFormError(f'Form {gram} is not of signature (2,1)')
        if self.anisotropic and self.level_value == 0:
            raise InvalidFormError('An anisotropic form has no integer points on its cone; level must be non-zero')

    @property
    def discriminant(self):
        return determinant(self.gram)


@dataclass(frozen=True)
class IsometryMatrix:
    """Integral matrix g with g^T F g = F, acting on points by x -> g x."""
    entries: tuple
    determinant: int = field(init=False)

    def __post_init__(self):
        entries = as_matrix(self.entries)
        object.__setattr__(self, 'entries', entries)
        object.__setattr__(self, 'determinant', determinant(entries))

    @classmethod
    def checked(cls, form, entries, require_special=False):
        """Build an isometry of form, raising if it is not one."""
        g = cls(entries)
        if not is_isometry(form, g.entries):
            raise NotAnIsometryError(f'g^T F g != F for g={g.entries} and F={form.gram}')
        if g.determinant not in (1, -1):
            raise NotAnIsometryError(f'Isometry {g.entries} has determinant {g.determinant}')
        if require_special and g.determinant != 1:
            raise NotAnIsometryError(f'Isometry {g.entries} is not in SO_F (det={g.determinant})')
        return g

    def inverse(self):
        return IsometryMatrix(integer_inverse(self.entries))


def evaluate_form(form, x):
    """Return x^T F x."""
    x = as_vector(x)
    g = form.gram
    return sum(g[i][j] * x[i] * x[j] for i in range(3) for j in range(3))


def is_isometry(form, g):
    """True iff g^T F g == F entrywise."""
    g = np.array(as_matrix(g), dtype=object)
    F = np.array(form.gram, dtype=object)
    return bool((g.T.dot(F).dot(g) == F).all())


def search_isometries(form, bound=None, special=True, drop_inverses=True):
    """Integral isometries of form with entries in [-bound, bound].

    Searched column by column: the i-th column c_i of an isometry satisfies
    c_i^T F c_j = F_ij, so candidate columns are enumerated once per diagonal
    value and combined through the bilinear form. The identity is excluded;
    with drop_inverses only one of g, g^-1 is kept.
    """
    if bound is None:
        bound = config.getint('orbits', 'search_bound')
    F = np.array(form.gram, dtype=np.int64)
    box = np.array(list(itertools.product(range(-bound, bound + 1), repeat=3)), dtype=np.int64)
    values = np.einsum('ij,jk,ik->i', box, F, box)
    columns = [box[values == F[i, i]] for i in range(3)]
    log.debug(f'Isometry search, bound {bound}: candidate columns {[len(c) for c in columns]}')

    b01 = columns[0].dot(F).dot(columns[1].T)
    b02 = columns[0].dot(F).dot(columns[2].T)
    b12 = columns[1].dot(F).dot(columns[2].T)

    found = []
    for i, j in np.argwhere(b01 == F[0, 1]):
        for k in np.flatnonzero((b02[i] == F[0, 2]) & (b12[j] == F[1, 2])):
            g = np.column_stack((columns[0][i], columns[1][j], columns[2][k]))
            det = int(round(np.linalg.det(g)))
            if det == 1 or (det == -1 and not special):
                found.append(as_matrix(g.tolist()))

    identity = as_matrix(np.eye(3, dtype=int).tolist())
    kept = []
    seen = set()
    for g in sorted(set(found), key=lambda m: (sum(v * v for row in m for v in row), m)):
        if g == identity or g in seen:
            continue
        seen.add(g)
        if drop_inverses:
            seen.add(integer_inverse(g))
        kept.append(IsometryMatrix(g))

    log.debug(f'Isometry search found {len(kept)} generators')
    return kept

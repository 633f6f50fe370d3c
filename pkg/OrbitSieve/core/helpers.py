"""
Exact integer helpers shared by the orbit and modular code.

Points and matrices in the hot loops are plain tuples of Python ints so the
arithmetic never overflows; numpy and sympy are used for one-off checks.
"""

import math

import numpy as np
import sympy

from OrbitSieve.core.errors import InvalidModulusError


def as_matrix(rows):
    """Return a 3x3 matrix as a tuple of int tuples."""
    matrix = tuple(tuple(int(v) for v in row) for row in rows)
    if len(matrix) != 3 or any(len(row) != 3 for row in matrix):
        raise ValueError(f'Expected a 3x3 matrix, got {rows}')
    return matrix


def as_vector(values):
    """Return a 3-vector as an int tuple."""
    vector = tuple(int(v) for v in values)
    if len(vector) != 3:
        raise ValueError(f'Expected a 3-vector, got {values}')
    return vector


def mat_vec(g, x):
    """g . x for a column vector x."""
    return (g[0][0] * x[0] + g[0][1] * x[1] + g[0][2] * x[2],
            g[1][0] * x[0] + g[1][1] * x[1] + g[1][2] * x[2],
            g[2][0] * x[0] + g[2][1] * x[1] + g[2][2] * x[2])


def mat_vec_mod(g, x, q):
    """g . x reduced mod q."""
    return ((g[0][0] * x[0] + g[0][1] * x[1] + g[0][2] * x[2]) % q,
            (g[1][0] * x[0] + g[1][1] * x[1] + g[1][2] * x[2]) % q,
            (g[2][0] * x[0] + g[2][1] * x[1] + g[2][2] * x[2]) % q)


def reduce_matrix(g, q):
    return tuple(tuple(v % q for v in row) for row in g)


def norm_sq(x):
    return x[0] * x[0] + x[1] * x[1] + x[2] * x[2]


def determinant(g):
    """Exact determinant of a small integer matrix."""
    return int(round(np.linalg.det(np.array(g, dtype=float))))


def integer_inverse(g):
    """Inverse of a unimodular integer matrix, exact."""
    m = sympy.Matrix(g)
    det = int(m.det())
    if det not in (1, -1):
        raise ValueError(f'Matrix {g} is not unimodular (det={det})')
    return as_matrix((m.adjugate() * det).tolist())


def prime_factors(q):
    """Sorted distinct primes dividing q."""
    return sorted(sympy.primefactors(q))


def is_squarefree(q):
    return q >= 1 and all(e == 1 for e in sympy.factorint(q).values())


def check_modulus(q):
    """Validate a squarefree modulus and return its prime factors."""
    if not isinstance(q, (int, np.integer)) or isinstance(q, bool) or q < 1:
        raise InvalidModulusError(f'Modulus must be a positive integer, got {q!r}')
    if not is_squarefree(int(q)):
        raise InvalidModulusError(f'Modulus {q} is not squarefree')
    return prime_factors(int(q))


def gcd3(x):
    return math.gcd(math.gcd(x[0], x[1]), x[2])

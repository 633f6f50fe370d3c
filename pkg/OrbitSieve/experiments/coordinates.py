"""
Homogeneous coordinate functions sieved on orbits.

Each function is a monomial in the coordinates divided by a constant that
removes the primes every orbit value is divisible by (xy is always divisible
by 12 and xyz by 60 on primitive Pythagorean triples).
"""

import math

import sympy

from dataclasses import dataclass

from OrbitSieve.core.errors import StrongPrimitivityError


@dataclass(frozen=True)
class CoordinateFunction:
    tag: str
    monomial: tuple  # coordinate indices multiplied together
    divisor: int
    kappa: int
    example: str
    family: str

    @property
    def degree(self):
        return len(self.monomial)

    def raw(self, x):
        return math.prod(x[i] for i in self.monomial)

    def raw_mod(self, x, q):
        return self.raw(x) % q

    def divisor_primes(self):
        return set(sympy.primefactors(self.divisor))


FUNCTIONS = {
    'hypotenuse': CoordinateFunction('hypotenuse', (2,), 1, 1, 'A', 'pythagorean'),
    'area': CoordinateFunction('area', (0, 1), 12, 4, 'B', 'pythagorean'),
    'coord_product': CoordinateFunction('coord_product', (0, 1, 2), 60, 5, 'C', 'pythagorean'),
    'raw_product': CoordinateFunction('raw_product', (0, 1, 2), 1, 3, 'D', 'aniso'),
}


def get_function(tag):
    if tag not in FUNCTIONS:
        raise KeyError(f'Unknown coordinate function {tag!r}; choose from {sorted(FUNCTIONS)}')
    return FUNCTIONS[tag]


def coordinate_value(f, x):
    """raw(x) / divisor as an exact integer."""
    raw = f.raw(x)
    if raw % f.divisor:
        raise StrongPrimitivityError(f'{f.tag}: raw value {raw} at {tuple(x)} is not divisible by {f.divisor}')
    return raw // f.divisor

#!/usr/bin/env python3

# Tests for coordinate functions, the sequence A and its distribution

import math
import unittest

import numpy as np
import pytest

from OrbitSieve.core.config import get_config
from OrbitSieve.core.errors import ConfigurationError, DomainError, StrongPrimitivityError
from OrbitSieve.experiments import (almost_prime_count, almost_prime_table, build_sequence, coordinate_value,
                                    distribution_report, get_function, prime_divisor_count, sequence_summary)
from OrbitSieve.experiments import sequences
from OrbitSieve.modular import local_density, orbit_mod_q
from OrbitSieve.orbits import get_preset, orbit_ball


full = get_preset('pythagorean_full')
hypotenuse = get_function('hypotenuse')
area = get_function('area')
coord_product = get_function('coord_product')


class TestCoordinates(unittest.TestCase):

    def test01_values(self):
        self.assertEqual(coordinate_value(hypotenuse, (3, 4, 5)), 5)
        self.assertEqual(coordinate_value(area, (3, 4, 5)), 1)
        self.assertEqual(coordinate_value(coord_product, (3, 4, 5)), 1)
        self.assertEqual(coordinate_value(coord_product, (5, 12, 13)), 13)

    def test02_divisibility_on_orbit(self):
        for x in orbit_ball(full, 10000).points:
            self.assertEqual(x[0] * x[1] % 12, 0)
            self.assertEqual(x[0] * x[1] * x[2] % 60, 0)

    def test03_strong_primitivity(self):
        self.assertRaises(StrongPrimitivityError, lambda: coordinate_value(area, (1, 1, 1)))

    def test04_registry(self):
        self.assertEqual([get_function(t).degree for t in ('hypotenuse', 'area', 'coord_product', 'raw_product')],
                         [1, 2, 3, 3])
        self.assertEqual(get_function('raw_product').family, 'aniso')
        self.assertRaises(KeyError, lambda: get_function('perimeter'))

    def test05_prime_divisor_count(self):
        self.assertEqual(prime_divisor_count(12), 3)
        self.assertEqual(prime_divisor_count(12, distinct=True), 2)
        self.assertEqual(prime_divisor_count(1), 0)
        self.assertEqual(prime_divisor_count(-8), 3)
        self.assertRaises(DomainError, lambda: prime_divisor_count(0))
        maxsize = sequences._factor.cache_info().maxsize
        self.assertEqual(maxsize, get_config().getint('experiments', 'factor_cache_size'))
        self.assertIsNotNone(maxsize)

    def test06_homogeneity(self):
        rng = np.random.default_rng(2024)
        for f in (hypotenuse, area, coord_product, get_function('raw_product')):
            for x in rng.integers(-1000, 1000, size=(40, 3)).tolist():
                for a in range(-5, 6):
                    self.assertEqual(f.raw([a * c for c in x]), a ** f.degree * f.raw(x))


class TestSequence(unittest.TestCase):

    def test01_small_ball(self):
        seq = build_sequence(full, hypotenuse, 30)
        self.assertEqual(seq.support, {5: 1, 13: 1, 17: 1})
        self.assertEqual((seq.mass, seq.N, seq.zeros), (3, 17, 0))
        seq = build_sequence(full, coord_product, 30)
        self.assertEqual(seq.support, {1: 1, 13: 1, 34: 1})

    def test02_radius_below_base(self):
        self.assertRaises(DomainError, lambda: build_sequence(full, hypotenuse, 5))

    def test03_almost_primes(self):
        seq = build_sequence(full, area, 30)
        self.assertEqual(seq.support, {1: 1, 5: 1, 10: 1})
        self.assertEqual(almost_prime_count(seq, 1)[0], 2)
        self.assertEqual(almost_prime_count(seq, 2)[0], 3)
        count, ratio = almost_prime_count(seq, None)
        self.assertEqual(count, 3)
        self.assertAlmostEqual(ratio, math.log(30) ** 4)

    def test04_almost_prime_table(self):
        seq = build_sequence(full, hypotenuse, 1000)
        rows = almost_prime_table(seq, [None, 3, 1])
        self.assertEqual([row['R'] for row in rows], [1, 3, 'inf'])
        counts = [row['count'] for row in rows]
        self.assertEqual(counts, sorted(counts))
        self.assertEqual(counts[-1], seq.mass)

    def test05_summary(self):
        seq = build_sequence(full, coord_product, 1000)
        summary = sequence_summary(seq)
        self.assertTrue(summary['archimedean_ok'])
        self.assertEqual(summary['mass'] + summary['zeros'], orbit_ball(full, 1000).count)


def test_distribution_report():
    seq = build_sequence(full, hypotenuse, 10000)
    densities = {13: local_density(orbit_mod_q(full, 13), hypotenuse)}
    report = distribution_report(seq, densities, moduli=[1, 2, 13])
    rows = {row['q']: row for row in report.rows}
    assert [row['q'] for row in report.rows] == [1, 2, 13]
    assert rows[1]['mass_q'] == seq.mass and rows[1]['abs_error'] == 0
    assert rows[2]['flag'] == 'bad_modulus' and rows[2]['predicted'] is None
    assert rows[13]['mass_q'] == sum(a for n, a in seq.support.items() if n % 13 == 0)
    assert rows[13]['rel_error'] < 0.2


def test_distribution_mismatched_density():
    seq = build_sequence(full, hypotenuse, 100)
    densities = {7: local_density(orbit_mod_q(full, 7), area)}
    with pytest.raises(ConfigurationError):
        distribution_report(seq, densities)


def test_distribution_missing_density():
    seq = build_sequence(full, hypotenuse, 100)
    with pytest.raises(ConfigurationError):
        distribution_report(seq, {}, moduli=[7])


def test_distribution_coord_product():
    seq = build_sequence(full, coord_product, 10000)
    # every q <= 20 prime to 2, 3 and 5
    good = [7, 11, 13, 17, 19]
    densities = {q: local_density(orbit_mod_q(full, q), coord_product) for q in good}
    report = distribution_report(seq, densities, moduli=[1] + good)
    assert [row['q'] for row in report.rows] == [1] + good
    for row in report.rows[1:]:
        assert row['flag'] == 'ok'
        assert row['rel_error'] < 0.2

#!/usr/bin/env python3

# Tests for forms, orbit enumeration and presets

import unittest

import pytest

from OrbitSieve.core.errors import (DomainError, InsufficientDataError, InvalidFormError, NotAnIsometryError,
                                    OrbitSpecError, ResourceCapError)
from OrbitSieve.orbits import (IsometryMatrix, OrbitSpec, TernaryForm, count_samples, estimate_delta,
                               evaluate_form, get_preset, is_isometry, orbit_ball, search_isometries)
from OrbitSieve.orbits.presets import (ANISO_FORM, BERGGREN_A, BERGGREN_B, BERGGREN_C, PYTHAGOREAN_FORM,
                                       pythagorean_full)
from OrbitSieve.core.helpers import mat_vec


full = get_preset('pythagorean_full')
thin = get_preset('pythagorean_thin2')


class TestForms(unittest.TestCase):

    def test01_berggren_are_isometries(self):
        for g in (BERGGREN_A, BERGGREN_B, BERGGREN_C):
            self.assertTrue(is_isometry(PYTHAGOREAN_FORM, g))

    def test02_berggren_children(self):
        self.assertEqual(mat_vec(BERGGREN_A, (3, 4, 5)), (5, 12, 13))
        self.assertEqual(mat_vec(BERGGREN_B, (3, 4, 5)), (21, 20, 29))
        self.assertEqual(mat_vec(BERGGREN_C, (3, 4, 5)), (15, 8, 17))

    def test03_determinants(self):
        self.assertEqual(IsometryMatrix(BERGGREN_A).determinant, 1)
        self.assertEqual(IsometryMatrix(BERGGREN_B).determinant, -1)
        self.assertEqual(IsometryMatrix(BERGGREN_C).determinant, 1)

    def test04_inverse(self):
        g = IsometryMatrix(BERGGREN_B)
        self.assertEqual(mat_vec(g.inverse().entries, (21, 20, 29)), (3, 4, 5))

    def test05_not_an_isometry(self):
        bad = ((1, 2, 2), (2, 1, 2), (2, 2, 2))
        self.assertFalse(is_isometry(PYTHAGOREAN_FORM, bad))
        self.assertRaises(NotAnIsometryError, lambda: IsometryMatrix.checked(PYTHAGOREAN_FORM, bad))
        self.assertRaises(NotAnIsometryError,
                          lambda: IsometryMatrix.checked(PYTHAGOREAN_FORM, BERGGREN_B, require_special=True))

    def test06_invalid_forms(self):
        self.assertRaises(InvalidFormError, lambda: TernaryForm(gram=((1, 1, 0), (0, 1, 0), (0, 0, -1))))
        self.assertRaises(InvalidFormError, lambda: TernaryForm(gram=((1, 0, 0), (0, 1, 0), (0, 0, 1))))
        self.assertRaises(InvalidFormError, lambda: TernaryForm(gram=((1, 0, 0), (0, 1, 0), (0, 0, 0))))
        self.assertRaises(InvalidFormError,
                          lambda: TernaryForm(gram=((1, 0, 0), (0, 1, 0), (0, 0, -3)), anisotropic=True))

    def test07_levels(self):
        self.assertEqual(evaluate_form(PYTHAGOREAN_FORM, (3, 4, 5)), 0)
        self.assertEqual(evaluate_form(ANISO_FORM, (1, 1, 1)), -1)

    def test08_search_isometries(self):
        found = search_isometries(ANISO_FORM, bound=3)
        self.assertTrue(found)
        identity = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
        for g in found:
            self.assertTrue(is_isometry(ANISO_FORM, g.entries))
            self.assertEqual(g.determinant, 1)
            self.assertNotEqual(g.entries, identity)


class TestOrbits(unittest.TestCase):

    def test01_ball_of_radius_30(self):
        ball = orbit_ball(full, 30)
        self.assertEqual(ball.sorted_points(), [(3, 4, 5), (5, 12, 13), (15, 8, 17)])

    def test02_points_stay_on_the_cone(self):
        for x in orbit_ball(full, 200).points:
            self.assertEqual(evaluate_form(PYTHAGOREAN_FORM, x), 0)

    def test03_radius_below_base(self):
        self.assertEqual(orbit_ball(full, 5).count, 0)
        self.assertRaises(DomainError, lambda: orbit_ball(full, 0))

    def test04_identity_generator(self):
        spec = OrbitSpec(form=PYTHAGOREAN_FORM, base=(3, 4, 5), generators=(((1, 0, 0), (0, 1, 0), (0, 0, 1)),))
        self.assertEqual(orbit_ball(spec, 100).sorted_points(), [(3, 4, 5)])

    def test05_visited_cap(self):
        self.assertRaises(ResourceCapError, lambda: orbit_ball(full, 30, cap=2))

    def test06_invalid_spec(self):
        self.assertRaises(OrbitSpecError, lambda: OrbitSpec(form=PYTHAGOREAN_FORM, base=(1, 2, 3),
                                                            generators=(BERGGREN_A,)))
        self.assertRaises(OrbitSpecError, lambda: OrbitSpec(form=PYTHAGOREAN_FORM, base=(6, 8, 10),
                                                            generators=(BERGGREN_A,)))
        self.assertRaises(OrbitSpecError, lambda: OrbitSpec(form=PYTHAGOREAN_FORM, base=(3, 4, 5),
                                                            generators=(BERGGREN_A,), closure_mode='semigroup'))

    def test07_group_mode_adds_inverses(self):
        spec = OrbitSpec(form=PYTHAGOREAN_FORM, base=(3, 4, 5), generators=(BERGGREN_A,), closure_mode='group')
        self.assertEqual(len(spec.moves), 2)


def test_full_tree_count():
    # primitive triples with hypotenuse below 1000/sqrt(2)
    count = orbit_ball(full, 1000).count
    assert 100 <= count <= 125


def test_count_samples_monotone():
    samples = count_samples(full, [250, 500, 1000])
    counts = [c for _, c in samples]
    assert counts == sorted(counts)
    assert samples[-1][1] == orbit_ball(full, 1000).count


def test_delta_thin_below_full():
    radii = [1000, 10000, 100000]
    full_delta = estimate_delta(count_samples(full, radii))
    thin_delta = estimate_delta(count_samples(thin, radii))
    assert 0.9 <= full_delta <= 1.05
    assert 0.5 < thin_delta < 0.95


def test_group_orbit_ball():
    aniso = get_preset('aniso_3')
    T = 60
    ball = orbit_ball(aniso, T)
    assert ball.count > 0
    # a wider pruning radius finds nothing new
    assert orbit_ball(aniso, T, slack=5).points == ball.points
    for x in ball.points:
        assert evaluate_form(ANISO_FORM, x) == -1
        assert sum(c * c for c in x) < T * T
    # closed under every move inside the ball
    for x in ball.points:
        for g in aniso.moves:
            y = mat_vec(g, x)
            if sum(c * c for c in y) < T * T:
                assert y in ball.points
    assert ball.points <= orbit_ball(aniso, 2 * T).points


def test_estimate_delta_exact_power():
    assert estimate_delta([(10, 10), (100, 100), (1000, 1000)]) == pytest.approx(1.0)


def test_estimate_delta_insufficient():
    with pytest.raises(InsufficientDataError):
        estimate_delta([(10, 4)])
    with pytest.raises(InsufficientDataError):
        estimate_delta([(10, 4), (10, 5)])


def test_presets():
    assert len(full.generators) == 3
    assert len(thin.generators) == 2
    assert pythagorean_full() == full
    with pytest.raises(KeyError):
        get_preset('nonexistent')

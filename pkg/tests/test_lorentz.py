import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from hyperprocrustes.errors import ValidationError
from hyperprocrustes.lorentz import (as_pointset, lift, loid_distance,
                                     lorentzian_inner, on_sheet, origin,
                                     project, renormalize)

from conftest import random_points

ACOSH_SQRT2 = 0.88137358701954302523  # mpmath, 30 digits

finite = st.floats(-50, 50, allow_nan=False, allow_infinity=False)


def vectors(d):
    return arrays(np.float64, d, elements=finite)


class TestInner:
    def test_origin_self_product(self):
        assert lorentzian_inner([1, 0, 0], [1, 0, 0]) == -1.0

    def test_orthogonal_axes(self):
        assert lorentzian_inner([1, 0, 0], [0, 1, 0]) == 0.0

    def test_hand_value(self):
        assert lorentzian_inner([2, 1, 1], [1, 1, 0]) == -1.0

    def test_dimension_mismatch(self):
        with pytest.raises(ValidationError):
            lorentzian_inner([1, 0, 0], [1, 0])

    def test_too_short(self):
        with pytest.raises(ValidationError):
            lorentzian_inner([1.0], [1.0])

    @given(vectors(4), vectors(4), vectors(4), finite)
    def test_bilinear_symmetric(self, u, v, w, a):
        lhs = lorentzian_inner(a * u + w, v)
        rhs = a * lorentzian_inner(u, v) + lorentzian_inner(w, v)
        scale = 1 + np.abs(a) * np.abs(u) @ np.abs(v) + np.abs(w) @ np.abs(v)
        assert abs(lhs - rhs) <= 1e-12 * scale
        assert lorentzian_inner(u, v) == lorentzian_inner(v, u)


class TestProjectLift:
    def test_origin(self):
        np.testing.assert_array_equal(project([1.0, 0, 0]), [0, 0])
        np.testing.assert_array_equal(lift([0.0, 0.0]), [1, 0, 0])

    def test_three_four(self):
        x = lift([3.0, 4.0])
        np.testing.assert_allclose(x, [np.sqrt(26), 3, 4], rtol=0, atol=1e-15)
        np.testing.assert_array_equal(project(x), [3, 4])

    def test_sqrt2_point(self):
        x = np.array([np.sqrt(2), 1.0, 0.0])
        assert abs(lorentzian_inner(x, x) + 1) < 1e-15
        np.testing.assert_array_equal(project(x), [1, 0])

    def test_round_trip_random(self, rng):
        z = rng.standard_normal((100, 3)) * 5
        np.testing.assert_array_equal(project(lift(z)), z)
        x = lift(z)
        assert np.max(np.abs(lift(project(x)) - x)) <= 1e-12

    def test_lift_non_finite(self):
        with pytest.raises(ValidationError):
            lift([np.nan, 0.0])

    @given(vectors(3))
    def test_lift_lands_on_sheet(self, z):
        assert on_sheet(lift(z))


class TestValidation:
    def test_origin_requires_positive_dim(self):
        with pytest.raises(ValidationError):
            origin(0)

    def test_lower_sheet_rejected(self):
        with pytest.raises(ValidationError):
            as_pointset([[-1.0, 0.0]])

    def test_off_sheet_rejected(self):
        with pytest.raises(ValidationError):
            as_pointset([[1.1, 0.0, 0.0]])

    def test_empty_rejected(self):
        with pytest.raises(ValidationError):
            as_pointset(np.zeros((0, 3)))

    def test_renormalize_repairs(self):
        x = np.array([1.5, 0.3, -0.2])
        assert not on_sheet(x)
        assert on_sheet(renormalize(x))

    def test_d_equals_one_allowed(self):
        X = as_pointset(lift([[0.5], [-2.0]]))
        assert X.shape == (2, 2)


class TestDistance:
    def test_identity(self):
        assert loid_distance(origin(2), origin(2)) == 0.0

    def test_unit_translation(self):
        assert loid_distance(lift([0, 0]), lift([0.6, 0.8])) == pytest.approx(
            ACOSH_SQRT2, abs=1e-15)

    def test_coincident(self):
        x = lift([0.6, 0.8])
        assert loid_distance(x, x) == 0.0

    def test_rejects_off_sheet(self):
        with pytest.raises(ValidationError):
            loid_distance([2.0, 0, 0], origin(2))

    def test_near_coincident_is_finite(self, rng):
        for _ in range(50):
            z = rng.standard_normal(3)
            x = lift(z)
            y = lift(z + 1e-12 * rng.standard_normal(3))
            d = loid_distance(x, y)
            assert np.isfinite(d) and 0 <= d < 1e-10

    def test_matches_acosh_far_apart(self, rng):
        X = random_points(rng, 200, 3, scale=3)
        Y = random_points(rng, 200, 3, scale=3)
        u = -lorentzian_inner(X, Y)
        np.testing.assert_allclose(loid_distance(X, Y), np.arccosh(u), rtol=1e-10)

    def test_axioms(self, rng):
        for _ in range(200):
            x, y, z = random_points(rng, 3, 4)
            dxy, dyx = loid_distance(x, y), loid_distance(y, x)
            assert dxy >= 0
            assert abs(dxy - dyx) <= 1e-12
            assert loid_distance(x, z) <= dxy + loid_distance(y, z) + 1e-9

    @settings(max_examples=50)
    @given(vectors(2), vectors(2))
    def test_symmetric_property(self, a, b):
        x, y = lift(a / 10), lift(b / 10)
        assert abs(loid_distance(x, y) - loid_distance(y, x)) <= 1e-12

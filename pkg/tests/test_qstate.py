import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from complexkit.qstate import (
    ONE,
    PLUS,
    ZERO,
    BlochVector,
    PureQubitState,
    bloch_array,
    from_angles,
    overlap,
    phase_equivalent,
    to_angles,
    to_bloch,
)

S2 = 1 / math.sqrt(2)
angles = st.tuples(st.floats(0.0, math.pi), st.floats(-10.0, 10.0))


def random_state(rng):
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return PureQubitState.from_vector(v / np.linalg.norm(v))


class TestConstruction:
    def test_small_drift_is_renormalized(self):
        s = PureQubitState(1.0 + 1e-10, 0.0)
        assert abs(abs(s.c0) - 1.0) < 1e-15

    def test_large_drift_rejected(self):
        with pytest.raises(ValueError):
            PureQubitState(1.0 + 1e-6, 0.0)

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            PureQubitState(float("nan"), 0.0)

    def test_array_protocol(self):
        assert np.allclose(np.asarray(PLUS), [S2, S2])


class TestFromAngles:
    def test_north_pole(self):
        s = from_angles(0.0, 1.234)
        assert s.c0 == 1.0 and s.c1 == 0.0

    def test_plus_state(self):
        s = from_angles(math.pi / 2, 0.0)
        assert s.c0 == pytest.approx(S2, abs=1e-15) and s.c1 == pytest.approx(S2, abs=1e-15)

    def test_plus_i_state(self):
        s = from_angles(math.pi / 2, math.pi / 2)
        assert abs(s.c1 - 1j * S2) < 1e-15

    @pytest.mark.parametrize("theta", [-1e-3, math.pi + 1e-3, float("nan")])
    def test_rejects_bad_theta(self, theta):
        with pytest.raises(ValueError):
            from_angles(theta, 0.0)

    def test_rejects_non_finite_phi(self):
        with pytest.raises(ValueError):
            from_angles(1.0, float("inf"))


class TestToAngles:
    def test_plus_i(self):
        a = to_angles(PureQubitState(S2, 1j * S2))
        assert a.theta == pytest.approx(math.pi / 2, abs=1e-15)
        assert a.phi == pytest.approx(math.pi / 2, abs=1e-15)

    def test_pole_convention(self):
        assert to_angles(ZERO).phi == 0.0 and to_angles(ZERO).theta == 0.0
        assert to_angles(PureQubitState(0.0, 1j)).phi == 0.0

    def test_third_quadrant_phase(self):
        a = to_angles(PureQubitState(0.5, math.sqrt(3) / 2 * cmath.exp(-2.5j)))
        assert a.theta == pytest.approx(2 * math.pi / 3, abs=1e-14)
        assert a.phi == pytest.approx(-2.5, abs=1e-14)

    def test_phi_range_includes_pi(self):
        assert to_angles(PureQubitState(S2, -S2)).phi == pytest.approx(math.pi)

    @given(angles)
    @settings(max_examples=200)
    def test_round_trip(self, ang):
        theta, phi = ang
        if not 1e-6 < theta < math.pi - 1e-6:
            return
        back = to_angles(from_angles(theta, phi))
        assert back.theta == pytest.approx(theta, abs=1e-10)
        assert math.remainder(back.phi - phi, 2 * math.pi) == pytest.approx(0.0, abs=1e-10)


class TestBloch:
    def test_basis_points(self):
        assert to_bloch(ZERO) == BlochVector(0.0, 0.0, 1.0)
        assert np.allclose(to_bloch(PLUS).array, [1, 0, 0], atol=1e-15)
        assert np.allclose(to_bloch(PureQubitState(S2, 1j * S2)).array, [0, 1, 0], atol=1e-15)

    @given(angles)
    @settings(max_examples=200)
    def test_spherical_formula(self, ang):
        theta, phi = ang
        a = to_bloch(from_angles(theta, phi)).array
        expected = [math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)]
        assert np.allclose(a, expected, atol=1e-12, rtol=0)

    def test_vectorized_matches_scalar(self):
        rng = np.random.default_rng(0)
        states = [random_state(rng) for _ in range(10)]
        arr = bloch_array(np.array([s.vector for s in states]))
        assert np.allclose(arr, [to_bloch(s).array for s in states], atol=1e-15)


class TestOverlap:
    def test_values(self):
        assert overlap(ZERO, ZERO) == 1
        assert overlap(ZERO, PLUS) == pytest.approx(S2)
        assert overlap(ZERO, ONE) == 0

    def test_bloch_inner_product_law(self):
        rng = np.random.default_rng(1)
        for _ in range(100):
            a, b = random_state(rng), random_state(rng)
            lhs = abs(overlap(a, b)) ** 2
            rhs = 0.5 * (1 + to_bloch(a).array @ to_bloch(b).array)
            assert lhs == pytest.approx(rhs, abs=1e-12)
            assert 0.0 <= 1 - lhs <= 1.0 + 1e-15


class TestPhaseEquivalent:
    def test_global_phase(self):
        shifted = PureQubitState.from_vector(cmath.exp(1j * math.pi / 7) * PLUS.vector)
        assert phase_equivalent(PLUS, shifted, 1e-10)

    def test_orthogonal(self):
        assert not phase_equivalent(ZERO, ONE, 1e-10)

    def test_tolerance_must_be_positive(self):
        with pytest.raises(ValueError):
            phase_equivalent(ZERO, ZERO, 0.0)

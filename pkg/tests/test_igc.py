import math

import numpy as np
import pytest
from scipy import integrate

from complexkit.errors import DegenerateGeometryError
from complexkit.hamiltonian import ConstantField, ParametricField, RotatingXYField
from complexkit.igc import (
    AngleRange,
    accessed_volume,
    accessible_volume,
    angle_range,
    complexity_length_scale,
    fs_length_series,
    ig_complexity,
    instantaneous_volume,
    refined_extreme,
    volume_report,
    volume_series,
)
from complexkit.propagator import trajectory
from complexkit.qstate import ZERO, from_angles
from complexkit.scenarios import two_basis_trajectories

GEO_TF = math.pi * math.sqrt(6) / 4


def geodesic(omega=1.0, n=257):
    return trajectory(ConstantField(0, (0, omega / math.sqrt(6), 0)), ZERO, 0.0, GEO_TF / omega, n)


def tilted(omega=1.0, n=1025):
    return trajectory(ConstantField(0, (omega / 2 / math.sqrt(3),) * 3), ZERO, 0.0, 2 * math.pi / (3 * omega), n)


def parametric(w0=1.0, n0=1.0, beta0=math.pi / 4, n=1025):
    return trajectory(ParametricField.linear(w0, beta0, n0), ZERO, 0.0, math.pi / (2 * w0), n)


class TestInstantaneous:
    def test_geodesic_meridian(self):
        tr = geodesic()
        assert np.allclose(volume_series(tr), tr.times / math.sqrt(6), atol=1e-14)
        assert instantaneous_volume(tr, 0) == 0.0

    def test_parametric(self):
        tr = parametric()
        expected = 0.25 * (1 - np.cos(2 * tr.times)) * tr.times
        assert np.allclose(volume_series(tr), expected, atol=1e-10)

    def test_nonnegative(self):
        tr = trajectory(RotatingXYField(1.0, 0.6), from_angles(1.2, 0.4), 0.0, 9.0, 301)
        assert np.all(volume_series(tr) >= 0)


class TestAccessed:
    @pytest.mark.parametrize("omega", [0.5, 1.0, 2.0])
    def test_geodesic(self, omega):
        assert accessed_volume(geodesic(omega)) == pytest.approx(math.pi / 8, abs=1e-10)

    @pytest.mark.parametrize("omega", [0.5, 1.0, 2.0])
    def test_tilted(self, omega):
        assert accessed_volume(tilted(omega)) == pytest.approx(5.11e-2, abs=5e-4)

    def test_tilted_omega_invariant(self):
        vals = [accessed_volume(tilted(w)) for w in (0.5, 1.0, 2.0)]
        assert np.ptp(vals) < 1e-8

    def test_parametric(self):
        for w0, n0 in ((1.0, 1.0), (2.0, 1.0), (1.0, 3.0)):
            expected = (1 / (4 * math.pi) + math.pi / 16) * n0 / w0
            assert accessed_volume(parametric(w0, n0)) == pytest.approx(expected, abs=1e-8)


class TestAccessible:
    def test_geodesic(self):
        assert accessible_volume(geodesic()) == pytest.approx(math.pi / 4, abs=1e-14)

    def test_tilted(self):
        tr = tilted()
        r = angle_range(tr)
        assert (r.theta_min, r.theta_max) == pytest.approx((0.0, math.pi / 2), abs=1e-10)
        assert (r.phi_min, r.phi_max) == pytest.approx((-math.pi / 4, 0.0), abs=1e-9)
        assert accessible_volume(tr) == pytest.approx(math.pi / 16, abs=1e-9)

    def test_parametric(self):
        assert accessible_volume(parametric(1.0, 3.0)) == pytest.approx(3 * math.pi / 4, abs=1e-9)

    def test_parametric_geodesic(self):
        tr = trajectory(ParametricField.linear(1.0, math.pi / 4, 0.0), ZERO, 0.0, math.pi / 2, 257)
        assert accessible_volume(tr) == pytest.approx(math.pi / 2, abs=1e-12)

    def test_containment(self):
        for tr in (tilted(), parametric(), trajectory(RotatingXYField(1, 2), from_angles(1, 0), 0, 5, 201)):
            r = angle_range(tr)
            assert all(r.contains(th, ph) for th, ph in zip(tr.theta, tr.phi))
            assert r.theta_min <= r.theta_max and r.phi_min <= r.phi_max


class TestComplexity:
    def test_geodesic(self):
        assert ig_complexity(geodesic()) == pytest.approx(0.5, abs=1e-12)
        assert complexity_length_scale(geodesic()) == pytest.approx(math.pi / 2 * math.sqrt(2), abs=1e-10)

    def test_tilted(self):
        assert ig_complexity(tilted()) == pytest.approx(0.7397549135, abs=1e-8)

    @pytest.mark.parametrize("w0,n0", [(1.0, 1.0), (2.0, 1.0), (1.0, 3.0)])
    def test_parametric_ratio_cancels(self, w0, n0):
        expected = (3 * math.pi**2 - 4) / (4 * math.pi**2)
        assert ig_complexity(parametric(w0, n0)) == pytest.approx(expected, abs=1e-8)

    def test_parametric_geodesic_length_scale(self):
        tr = trajectory(ParametricField.linear(1.0, math.pi / 4, 0.0), ZERO, 0.0, math.pi / 2, 257)
        assert complexity_length_scale(tr) == pytest.approx(math.pi * math.sqrt(2), abs=1e-10)

    def test_rotating_field_bounds(self):
        for nu in (0.0, 0.5, 1.0, 3.0):
            tr = trajectory(RotatingXYField(1.0, nu), ZERO, 0.0, 2 * math.pi, 257)
            rep = volume_report(tr)
            assert 0.0 <= rep.complexity <= 1.0
            assert rep.accessed <= rep.accessible + 1e-12

    def test_resonant_pole_crossing(self):
        tr = trajectory(RotatingXYField(1.0, 0.0), ZERO, 0.0, 2 * math.pi, 257)
        rep = volume_report(tr)
        assert rep.accessible == pytest.approx(math.pi / 2, abs=1e-12)
        assert rep.complexity == pytest.approx(0.75, abs=1e-8)

    def test_stationary_state_is_degenerate(self):
        tr = trajectory(ConstantField(0, (0, 0, 1)), ZERO, 0.0, 1.0, 9)
        with pytest.raises(DegenerateGeometryError):
            ig_complexity(tr)

    def test_length_scale_formula(self):
        rep = volume_report(geodesic())
        s = math.pi / 2
        assert rep.length_scale == pytest.approx(s * math.sqrt(rep.accessible / rep.accessed), abs=1e-12)


class TestBasisIndependence:
    def test_two_bases(self):
        comp, other = two_basis_trajectories(257)
        for tr in (comp, other):
            assert accessed_volume(tr) == pytest.approx(math.pi / 8, abs=1e-8)
            assert accessible_volume(tr) == pytest.approx(math.pi / 4, abs=1e-8)
            assert integrate.simpson(volume_series(tr), x=tr.times) == pytest.approx(math.pi**2 / 32, abs=1e-8)


class TestHelpers:
    def test_refined_extreme_parabola(self):
        x = np.linspace(-1, 1, 11)
        y = 2.0 - (x - 0.03) ** 2
        assert refined_extreme(y, int(np.argmax(y)), True) == pytest.approx(2.0, abs=1e-14)

    def test_refined_extreme_edges(self):
        y = np.array([3.0, 2.0, 1.0])
        assert refined_extreme(y, 0, True) == 3.0

    def test_fs_length(self):
        tr = geodesic()
        assert np.allclose(fs_length_series(tr), tr.times / math.sqrt(6), atol=1e-12)

    def test_angle_range_contains(self):
        r = AngleRange(0.0, 1.0, -1.0, 1.0)
        assert r.contains(0.5, 0.0) and not r.contains(1.5, 0.0)

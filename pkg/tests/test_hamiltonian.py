import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.polynomial import Polynomial
from scipy import linalg

from complexkit.errors import ConfigError, NumericalError
from complexkit.hamiltonian import (
    SIGMA_X,
    SIGMA_Z,
    ConstantField,
    CustomField,
    ExponentialFrame,
    FieldConfiguration,
    ParametricField,
    RotatingXYField,
    ScaledDirectionField,
    check_commuting,
    config_from_dict,
    energy_uncertainty,
    field_at,
    field_derivative,
    load_config,
    matrix_at,
    pauli_components,
    rotating_frame_transform,
    uzdin_phase,
    z_rotation_frame,
)

W = 1.3
times = st.floats(-5.0, 5.0)


def all_configs():
    return [
        ConstantField(0.4, (0.1, -0.2, 0.7)),
        ScaledDirectionField(Polynomial([0.3, 1.0]), (0.0, 0.6, 0.8), 0.2),
        RotatingXYField(W, 0.7),
        ParametricField.linear(1.0, math.pi / 4, 1.0),
        CustomField(lambda t: (math.sin(t), t, 1.0), lambda t: 0.5 * t),
    ]


class TestFieldAt:
    def test_constant(self):
        h0, h = field_at(ConstantField(0.0, (0.0, W / math.sqrt(6), 0.0)), 12.3)
        assert h0 == 0.0 and np.array_equal(h, [0.0, W / math.sqrt(6), 0.0])

    def test_rotating_at_zero(self):
        h0, h = field_at(RotatingXYField(W, 2.0), 0.0)
        assert h0 == 0.0 and np.allclose(h, [W / 2, 0, 0], atol=0)

    @given(times)
    def test_rotating_norm_constant(self, t):
        assert np.linalg.norm(field_at(RotatingXYField(W, 0.9), t)[1]) == pytest.approx(W / 2, rel=1e-14)

    def test_parametric_energy_uncertainty(self):
        w0, n0 = 1.2, 0.7
        p = ParametricField.linear(w0, 0.3, n0)
        for t in np.linspace(0, 1.5, 7):
            de2 = energy_uncertainty(p.bloch(t), p.field(t)[1]) ** 2
            assert de2 == pytest.approx(w0**2 + 0.25 * n0**2 * math.sin(2 * w0 * t) ** 2, abs=1e-12)
            assert p.speed_squared(t) == pytest.approx(de2, abs=1e-12)

    def test_custom_non_finite(self):
        with pytest.raises(NumericalError):
            field_at(CustomField(lambda t: (float("nan"), 0, 0)), 0.0)

    def test_non_finite_time(self):
        with pytest.raises(ValueError):
            field_at(ConstantField(), float("inf"))

    def test_direction_must_be_unit(self):
        with pytest.raises(ConfigError):
            ScaledDirectionField(Polynomial([1.0]), (1.0, 1.0, 0.0))


class TestMatrixAt:
    def test_pauli(self):
        assert np.array_equal(matrix_at(ConstantField(0.0, (0, 0, 1)), 0.0), SIGMA_Z)
        assert np.array_equal(matrix_at(ConstantField(0.0, (1, 0, 0)), 0.0), SIGMA_X)

    @pytest.mark.parametrize("config", all_configs(), ids=lambda c: c.kind)
    def test_hermitian_and_trace(self, config):
        for t in np.linspace(-2, 2, 9):
            H = matrix_at(config, t)
            assert np.max(np.abs(H - H.conj().T)) <= 1e-12
            assert np.trace(H).real == pytest.approx(2 * field_at(config, t)[0], abs=1e-12)
            h0, h = pauli_components(H)
            assert np.allclose(h, field_at(config, t)[1], atol=1e-14)

    def test_parametric_traceless(self):
        assert np.trace(matrix_at(ParametricField.linear(), 0.4)) == 0


def _reference_parametric_matrix(alpha, beta, ad, bd, t):
    """Direct entrywise evaluation of the traceless parametric Hamiltonian."""
    a, b = alpha(t), beta(t)
    A, B = ad(t), bd(t)
    s2 = math.sin(2 * a)
    h11 = 0.5 * B * s2**2
    h12 = -0.5 * B * math.cos(2 * a) * s2 * np.exp(-1j * b) - 1j * A * np.exp(-1j * b)
    return np.array([[h11, h12], [np.conj(h12), -h11]])


class TestParametric:
    def test_matches_direct_matrix(self):
        p = ParametricField.linear(0.8, 0.2, 1.7)
        for t in np.linspace(0, 2, 5):
            ref = _reference_parametric_matrix(p.alpha, p.beta, p.alpha_dot, p.beta_dot, t)
            assert np.allclose(matrix_at(p, t), ref, atol=1e-14)

    @given(st.floats(0.0, 3.0))
    @settings(max_examples=50)
    def test_orthogonality_and_precession(self, t):
        p = ParametricField(Polynomial([0.1, 0.9, 0.3]), Polynomial([0.5, -1.1, 0.4]))
        a, h = p.bloch(t), p.field(t)[1]
        assert a @ h == pytest.approx(0.0, abs=1e-10)
        adot = (p.bloch(t + 1e-6) - p.bloch(t - 1e-6)) / 2e-6
        assert np.allclose(adot, 2 * np.cross(h, a), atol=1e-6)
        assert a @ field_derivative(p, t) == pytest.approx(0.0, abs=1e-8)

    def test_analytic_derivative_matches_finite_difference(self):
        p = ParametricField(Polynomial([0.1, 0.9, 0.3]), Polynomial([0.5, -1.1, 0.4]))
        for t in (0.0, 0.7, 1.9):
            fd = FieldConfiguration.field_derivative(p, t)
            assert np.allclose(p.field_derivative(t), fd, atol=1e-8)

    def test_callable_inputs_get_numeric_derivatives(self):
        p = ParametricField(lambda t: 0.5 * t, lambda t: 1.0 + 0.2 * t)
        assert p.alpha_dot(0.3) == pytest.approx(0.5, abs=1e-9)
        assert p.beta_ddot(0.3) == pytest.approx(0.0, abs=1e-3)

    def test_explicit_derivative_wins(self):
        p = ParametricField(lambda t: 0.5 * t, lambda t: 1.0, alpha_dot=lambda t: 42.0)
        assert p.alpha_dot(0.0) == 42.0

    def test_field_magnitude_identities(self):
        w0, n0 = 1.1, 0.6
        p = ParametricField.linear(w0, 0.4, n0)
        for t in np.linspace(0, 1.4, 8):
            h, hd = p.field(t)[1], p.field_derivative(t)
            assert h @ h == pytest.approx(n0**2 / 8 + w0**2 - n0**2 / 8 * math.cos(4 * w0 * t), abs=1e-12)
            hd2 = n0**4 / 32 * (1 - math.cos(8 * w0 * t)) + 2 * n0**2 * w0**2 * (1 + math.cos(4 * w0 * t))
            assert hd @ hd == pytest.approx(hd2, abs=1e-12)
            assert h @ hd == pytest.approx(0.25 * n0**2 * w0 * math.sin(4 * w0 * t), abs=1e-12)


class TestUzdinPhase:
    def test_no_azimuthal_motion(self):
        assert uzdin_phase(lambda t: t, lambda t: 0.0, 3.0) == 0.0

    def test_equator(self):
        assert uzdin_phase(lambda t: math.pi / 2, lambda t: 0.7, 2.0) == pytest.approx(1.4, abs=1e-12)

    def test_linear_sweep(self):
        # int_0^T nu sin^2(w t) dt
        w, nu, T = 1.0, 1.0, 1.2
        expected = nu * (T / 2 - math.sin(2 * w * T) / (4 * w))
        assert uzdin_phase(lambda t: w * t, lambda t: nu, T) == pytest.approx(expected, abs=1e-12)

    def test_nonintegrable_reported(self):
        with pytest.raises(NumericalError):
            uzdin_phase(lambda t: math.pi / 2, lambda t: 1.0 / abs(t - 0.5) ** 1.5 if t != 0.5 else 0.0, 1.0)


class TestRotatingFrame:
    def test_rotating_field_becomes_static(self):
        w, nu = 1.3, 0.4
        cfg = RotatingXYField(w, nu)
        expected = 0.5 * (w * SIGMA_X - nu * SIGMA_Z)
        for t in (0.0, 0.9, 3.3):
            assert np.allclose(rotating_frame_transform(cfg, z_rotation_frame(nu), t), expected, atol=1e-12)

    def test_identity_frame(self):
        cfg = ConstantField(0.3, (0.2, 0.1, -0.5))
        out = rotating_frame_transform(cfg, lambda t: np.eye(2), 0.7)
        assert np.allclose(out, matrix_at(cfg, 0.7), atol=1e-9)

    def test_interaction_picture_of_itself(self):
        cfg = ConstantField(0.0, (0.2, 0.1, -0.5))
        H = matrix_at(cfg, 0.0)
        assert np.allclose(rotating_frame_transform(cfg, ExponentialFrame(H), 1.1), 0, atol=1e-9)
        numeric = rotating_frame_transform(cfg, lambda t: linalg.expm(-1j * H * t), 1.1)
        assert np.allclose(numeric, 0, atol=1e-9)

    def test_non_unitary_frame(self):
        with pytest.raises(ValueError):
            rotating_frame_transform(ConstantField(), lambda t: 2 * np.eye(2), 0.0)


class TestEnergyUncertainty:
    def test_geodesic_value(self):
        assert energy_uncertainty((0, 0, 1), (0, W / math.sqrt(6), 0)) == pytest.approx(W / math.sqrt(6))

    def test_eigenstate(self):
        assert energy_uncertainty((0, 0, 1), (0, 0, 2.5)) == 0.0


class TestCommutation:
    def test_fixed_direction_commutes(self):
        cfg = ScaledDirectionField(Polynomial([0.0, 2.0]), (0.0, 1.0, 0.0))
        assert check_commuting(cfg, 0.0, 2.0)

    def test_rotating_does_not(self):
        assert not check_commuting(RotatingXYField(1.0, 1.0), 0.0, 2.0)


class TestConfigFiles:
    def test_examples_round_trip(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"kind": "rotating_xy", "omega": 1.0, "nu": 1.0}))
        assert load_config(path) == RotatingXYField(1.0, 1.0)

    def test_presets(self):
        cfg = config_from_dict({
            "kind": "parametric",
            "alpha": {"preset": "linear", "c0": 0.0, "c1": 1.0},
            "beta": {"preset": "quadratic", "c0": 0.5, "c1": 0.0, "c2": 2.0},
        })
        assert cfg.alpha(2.0) == 2.0 and cfg.beta(1.0) == 2.5 and cfg.beta_dot(1.0) == 4.0
        amp = config_from_dict({"kind": "scaled_direction", "direction": [0, 0, 1],
                                "amplitude": {"preset": "constant", "c0": 3.0}})
        assert np.array_equal(amp.field(9.0)[1], [0, 0, 3.0])
        const = config_from_dict({"kind": "constant", "h": [0, 0, 1]})
        assert const == ConstantField(0.0, (0.0, 0.0, 1.0))

    @pytest.mark.parametrize("bad", [
        {"kind": "nope"},
        {"kind": "rotating_xy", "omega": "1"},
        {"kind": "constant", "h": [0, 1]},
        {"kind": "parametric", "alpha": {"preset": "cubic"}, "beta": 0.0},
        [],
    ])
    def test_rejects(self, bad):
        with pytest.raises(ConfigError):
            config_from_dict(bad)

    def test_syntax_error_position(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"kind": "constant",\n "h": [0, 0, 1}')
        with pytest.raises(json.JSONDecodeError) as info:
            load_config(path)
        assert info.value.lineno == 2

"""Qubit Hamiltonians ``H(t) = h0(t) 1 + h(t) . sigma`` (hbar = 1).

Every field class exposes ``field(t) -> (h0, hvec)`` and
``field_derivative(t) -> dh/dt``. Energies are angular frequencies.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Union

import numpy as np
from numpy.polynomial import Polynomial
from scipy import integrate, linalg

from .errors import ConfigError, NumericalError
from .qstate import as_vec3

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)
IDENTITY = np.eye(2, dtype=complex)

FD_STEP = 1e-6
UNIT_TOL = 1e-12

ScalarFn = Callable[[float], float]


def _central_diff(f: Callable, t: float, step: float = FD_STEP):
    return (np.asarray(f(t + step)) - np.asarray(f(t - step))) / (2 * step)


def _derivative(f, analytic=None):
    """Analytic derivative when available, else a central-difference closure."""
    if analytic is not None:
        return analytic
    if isinstance(f, Polynomial):
        return f.deriv()
    return lambda t: float(_central_diff(f, t))


def _unit(v, name="direction") -> np.ndarray:
    v = np.asarray(v, dtype=float).reshape(3)
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > UNIT_TOL:
        raise ConfigError(f"{name} must be a unit vector (norm {norm!r})")
    return v


def pauli_matrix(h0: float, hvec) -> np.ndarray:
    """Assemble ``h0*I + hvec . sigma`` entrywise."""
    hx, hy, hz = as_vec3(hvec)
    return np.array(
        [[h0 + hz, hx - 1j * hy], [hx + 1j * hy, h0 - hz]],
        dtype=complex,
    )


def pauli_components(H: np.ndarray) -> tuple[float, np.ndarray]:
    """Inverse of :func:`pauli_matrix` for a Hermitian 2x2 matrix."""
    H = np.asarray(H, dtype=complex)
    h0 = 0.5 * (H[0, 0] + H[1, 1]).real
    hvec = np.array([H[1, 0].real, H[1, 0].imag, 0.5 * (H[0, 0] - H[1, 1]).real])
    return float(h0), hvec


class FieldConfiguration:
    """Base class for the magnetic-field classes."""

    kind = "abstract"

    def field(self, t: float) -> tuple[float, np.ndarray]:
        raise NotImplementedError

    def field_derivative(self, t: float) -> np.ndarray:
        return _central_diff(lambda s: self.field(s)[1], t)

    @property
    def is_stationary(self) -> bool:
        return False


@dataclass(frozen=True)
class ConstantField(FieldConfiguration):
    h0: float = 0.0
    hvec: tuple = (0.0, 0.0, 0.0)

    kind = "constant"

    def __post_init__(self):
        object.__setattr__(self, "hvec", tuple(float(x) for x in np.asarray(self.hvec).reshape(3)))

    def field(self, t):
        return float(self.h0), np.array(self.hvec)

    def field_derivative(self, t):
        return np.zeros(3)

    @property
    def is_stationary(self):
        return True

    @property
    def strength(self) -> float:
        return float(np.linalg.norm(self.hvec))

    @property
    def axis(self) -> np.ndarray:
        h = self.strength
        return np.array(self.hvec) / h if h > 0 else np.zeros(3)


@dataclass(frozen=True)
class ScaledDirectionField(FieldConfiguration):
    """``h(t) = amplitude(t) * direction`` with a fixed unit direction.

    ``amplitude`` may be a callable or a :class:`numpy.polynomial.Polynomial`;
    polynomials get exact integrals and derivatives.
    """

    amplitude: Union[ScalarFn, Polynomial]
    direction: tuple = (0.0, 0.0, 1.0)
    h0: float = 0.0
    amplitude_dot: Optional[ScalarFn] = None

    kind = "scaled_direction"

    def __post_init__(self):
        object.__setattr__(self, "direction", tuple(_unit(self.direction)))

    def field(self, t):
        return float(self.h0), float(self.amplitude(t)) * np.array(self.direction)

    def field_derivative(self, t):
        dot = _derivative(self.amplitude, self.amplitude_dot)
        return float(dot(t)) * np.array(self.direction)

    def amplitude_integral(self, t0: float, t1: float) -> float:
        if isinstance(self.amplitude, Polynomial):
            anti = self.amplitude.integ()
            return float(anti(t1) - anti(t0))
        val, err, *_ = integrate.quad(self.amplitude, t0, t1, epsabs=1e-12, epsrel=1e-12, limit=200)
        if err > 1e-10:
            raise NumericalError("amplitude integral did not converge", residual=err)
        return float(val)


@dataclass(frozen=True)
class RotatingXYField(FieldConfiguration):
    """``H(t) = (omega/2)[cos(nu t) sigma_x + sin(nu t) sigma_y]``."""

    omega: float = 1.0
    nu: float = 1.0

    kind = "rotating_xy"

    def field(self, t):
        w, nu = self.omega, self.nu
        return 0.0, np.array([0.5 * w * math.cos(nu * t), 0.5 * w * math.sin(nu * t), 0.0])

    def field_derivative(self, t):
        w, nu = self.omega, self.nu
        return np.array([-0.5 * w * nu * math.sin(nu * t), 0.5 * w * nu * math.cos(nu * t), 0.0])


@dataclass(frozen=True)
class ParametricField(FieldConfiguration):
    """Traceless field that transports ``cos a|0> + e^{ib} sin a|1>`` in parallel.

    ``alpha`` and ``beta`` are callables or polynomials of time. Missing
    derivatives are filled in from polynomial algebra or central differences.
    """

    alpha: Union[ScalarFn, Polynomial]
    beta: Union[ScalarFn, Polynomial]
    alpha_dot: Optional[ScalarFn] = None
    beta_dot: Optional[ScalarFn] = None
    alpha_ddot: Optional[ScalarFn] = None
    beta_ddot: Optional[ScalarFn] = None

    kind = "parametric"

    def __post_init__(self):
        ad = _derivative(self.alpha, self.alpha_dot)
        bd = _derivative(self.beta, self.beta_dot)
        object.__setattr__(self, "alpha_dot", ad)
        object.__setattr__(self, "beta_dot", bd)
        object.__setattr__(self, "alpha_ddot", _derivative(ad, self.alpha_ddot))
        object.__setattr__(self, "beta_ddot", _derivative(bd, self.beta_ddot))

    @classmethod
    def linear(cls, omega0=1.0, beta0=math.pi / 4, nu0=0.0) -> "ParametricField":
        """``alpha = omega0 t`` and ``beta = beta0 + nu0 t``."""
        return cls(Polynomial([0.0, omega0]), Polynomial([beta0, nu0]))

    def field(self, t):
        a, b = float(self.alpha(t)), float(self.beta(t))
        ad, bd = float(self.alpha_dot(t)), float(self.beta_dot(t))
        c2, s2 = math.cos(2 * a), math.sin(2 * a)
        cb, sb = math.cos(b), math.sin(b)
        return 0.0, np.array(
            [
                -0.5 * bd * c2 * s2 * cb - ad * sb,
                -0.5 * bd * c2 * s2 * sb + ad * cb,
                0.5 * bd * s2 * s2,
            ]
        )

    def field_derivative(self, t):
        a, b = float(self.alpha(t)), float(self.beta(t))
        ad, bd = float(self.alpha_dot(t)), float(self.beta_dot(t))
        add, bdd = float(self.alpha_ddot(t)), float(self.beta_ddot(t))
        c2, s2 = math.cos(2 * a), math.sin(2 * a)
        cb, sb = math.cos(b), math.sin(b)
        cs = c2 * s2
        dcs = 2 * ad * math.cos(4 * a)
        return np.array(
            [
                -0.5 * bdd * cs * cb - 0.5 * bd * dcs * cb + 0.5 * bd * bd * cs * sb - add * sb - ad * bd * cb,
                -0.5 * bdd * cs * sb - 0.5 * bd * dcs * sb - 0.5 * bd * bd * cs * cb + add * cb - ad * bd * sb,
                0.5 * bdd * s2 * s2 + 2 * ad * bd * s2 * c2,
            ]
        )

    def bloch(self, t) -> np.ndarray:
        a, b = float(self.alpha(t)), float(self.beta(t))
        return np.array([math.sin(2 * a) * math.cos(b), math.sin(2 * a) * math.sin(b), math.cos(2 * a)])

    def speed_squared(self, t) -> float:
        """``<m'|m'> = alpha'^2 + beta'^2 sin^2(2 alpha) / 4``."""
        a = float(self.alpha(t))
        return float(self.alpha_dot(t)) ** 2 + 0.25 * float(self.beta_dot(t)) ** 2 * math.sin(2 * a) ** 2


@dataclass(frozen=True)
class CustomField(FieldConfiguration):
    """User callables ``h0_fn(t) -> float`` and ``h_fn(t) -> 3-vector``.

    The callables must be safe to call concurrently if the configuration is
    shared between threads.
    """

    h_fn: Callable[[float], np.ndarray]
    h0_fn: Optional[ScalarFn] = None

    kind = "custom"

    def field(self, t):
        h0 = 0.0 if self.h0_fn is None else float(self.h0_fn(t))
        h = np.asarray(self.h_fn(t), dtype=float).reshape(3)
        if not (math.isfinite(h0) and np.all(np.isfinite(h))):
            raise NumericalError(f"custom field returned non-finite values at t={t!r}")
        return h0, h


def field_at(config: FieldConfiguration, t: float) -> tuple[float, np.ndarray]:
    if not math.isfinite(t):
        raise ValueError("t must be finite")
    return config.field(t)


def field_derivative(config: FieldConfiguration, t: float) -> np.ndarray:
    return np.asarray(config.field_derivative(t), dtype=float)


def matrix_at(config: FieldConfiguration, t: float) -> np.ndarray:
    """The 2x2 Hermitian matrix of ``H(t)``."""
    h0, h = field_at(config, t)
    return pauli_matrix(h0, h)


def uzdin_phase(alpha: ScalarFn, beta_dot: ScalarFn, t: float, t0: float = 0.0) -> float:
    """Parallel-transport phase ``int_t0^t beta'(s) sin^2(alpha(s)) ds``."""
    if t == t0:
        return 0.0
    val, err, info = integrate.quad(
        lambda s: float(beta_dot(s)) * math.sin(float(alpha(s))) ** 2,
        t0,
        t,
        epsabs=1e-10,
        epsrel=1e-12,
        limit=200,
        full_output=1,
    )[:3]
    if err > 1e-10:
        raise NumericalError("phase quadrature did not converge", residual=err)
    return float(val)


@dataclass(frozen=True)
class ExponentialFrame:
    """Frame unitary ``U(t) = exp(-i G t)`` for a constant Hermitian ``G``."""

    generator: np.ndarray

    def unitary(self, t):
        return linalg.expm(-1j * np.asarray(self.generator) * t)

    def derivative(self, t):
        return -1j * np.asarray(self.generator) @ self.unitary(t)


class _CallableFrame:
    def __init__(self, fn):
        self.fn = fn

    def unitary(self, t):
        return np.asarray(self.fn(t), dtype=complex)

    def derivative(self, t):
        return _central_diff(self.unitary, t)


def z_rotation_frame(nu: float) -> ExponentialFrame:
    """``U(t) = exp(-i nu t sigma_z / 2)``."""
    return ExponentialFrame(0.5 * nu * SIGMA_Z)


def rotating_frame_transform(config: FieldConfiguration, frame, t: float) -> np.ndarray:
    """Hamiltonian seen in the frame ``|psi> = U(t)|psi_RF>``.

    ``frame`` is an :class:`ExponentialFrame`, or a callable ``t -> U(t)``
    (differentiated by central differences).
    """
    if not hasattr(frame, "unitary"):
        frame = _CallableFrame(frame)
    U = frame.unitary(t)
    if np.linalg.norm(U.conj().T @ U - IDENTITY) > 1e-9:
        raise ValueError("frame transformation is not unitary")
    Ud = frame.derivative(t)
    H = matrix_at(config, t)
    H_rf = U.conj().T @ H @ U - 1j * U.conj().T @ Ud
    return 0.5 * (H_rf + H_rf.conj().T)


def energy_uncertainty(a, hvec) -> float:
    """``sqrt(h.h - (a.h)^2)`` for Bloch vector ``a``."""
    a, h = as_vec3(a), as_vec3(hvec)
    return math.sqrt(max(float(h @ h - (a @ h) ** 2), 0.0))


def check_commuting(config: FieldConfiguration, t0: float, t1: float, samples: int = 20,
                    tol: float = 1e-10, seed: int = 0) -> bool:
    """Sample ``[H(ti), H(tj)]`` at random pairs in [t0, t1]."""
    rng = np.random.default_rng(seed)
    lo, hi = min(t0, t1), max(t0, t1)
    for _ in range(samples):
        ti, tj = rng.uniform(lo, hi, size=2) if hi > lo else (lo, lo)
        A, B = matrix_at(config, ti), matrix_at(config, tj)
        scale = max(1.0, np.linalg.norm(A) * np.linalg.norm(B))
        if np.linalg.norm(A @ B - B @ A) > tol * scale:
            return False
    return True


# JSON configuration files

_PRESETS = {"constant": ("c0",), "linear": ("c0", "c1"), "quadratic": ("c0", "c1", "c2")}


def _preset(spec, where) -> Polynomial:
    if isinstance(spec, (int, float)):
        return Polynomial([float(spec)])
    if not isinstance(spec, dict) or spec.get("preset") not in _PRESETS:
        raise ConfigError(f"{where}: expected a preset object with preset in {sorted(_PRESETS)}")
    coeffs = []
    for name in _PRESETS[spec["preset"]]:
        value = spec.get(name, 0.0)
        if not isinstance(value, (int, float)):
            raise ConfigError(f"{where}.{name}: expected a number")
        coeffs.append(float(value))
    return Polynomial(coeffs)


def _number(d, key, default=None):
    if key not in d:
        if default is None:
            raise ConfigError(f"missing field {key!r}")
        return default
    value = d[key]
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ConfigError(f"field {key!r} must be a number")
    return float(value)


def _vector(d, key):
    value = d.get(key)
    if not (isinstance(value, list) and len(value) == 3 and all(isinstance(x, (int, float)) for x in value)):
        raise ConfigError(f"field {key!r} must be a list of three numbers")
    return tuple(float(x) for x in value)


def config_from_dict(d: dict) -> FieldConfiguration:
    """Build a field configuration from its JSON object form.

    Examples::

        {"kind": "constant", "h0": 0.0, "h": [0, 0, 1]}
        {"kind": "rotating_xy", "omega": 1.0, "nu": 1.0}
        {"kind": "scaled_direction", "direction": [0, 1, 0],
         "amplitude": {"preset": "linear", "c0": 0, "c1": 2}}
        {"kind": "parametric", "alpha": {"preset": "linear", "c1": 1},
         "beta": {"preset": "linear", "c0": 0.785, "c1": 1}}
    """
    if not isinstance(d, dict):
        raise ConfigError("configuration must be a JSON object")
    kind = d.get("kind")
    if kind == "constant":
        return ConstantField(_number(d, "h0", 0.0), _vector(d, "h"))
    if kind == "rotating_xy":
        return RotatingXYField(_number(d, "omega"), _number(d, "nu"))
    if kind == "scaled_direction":
        return ScaledDirectionField(
            _preset(d.get("amplitude"), "amplitude"), _vector(d, "direction"), _number(d, "h0", 0.0)
        )
    if kind == "parametric":
        return ParametricField(_preset(d.get("alpha"), "alpha"), _preset(d.get("beta"), "beta"))
    raise ConfigError(f"unknown kind {kind!r}")


def load_config(path) -> FieldConfiguration:
    """Read a JSON configuration file. Syntax errors keep their line/column."""
    text = Path(path).read_text()
    return config_from_dict(json.loads(text))

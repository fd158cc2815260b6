"""Time evolution of a qubit: closed forms and ordered numerical integration."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .errors import NumericalError
from .hamiltonian import (
    ConstantField,
    FieldConfiguration,
    ParametricField,
    RotatingXYField,
    ScaledDirectionField,
    check_commuting,
    uzdin_phase,
)
from .qstate import (
    POLE_TOL,
    BlochVector,
    PureQubitState,
    SphericalAngles,
    as_state,
    bloch_array,
    phase_equivalent,
)

MAX_STEPS = 2**22
METHODS = ("midpoint_exponential", "rk4_renormalized")


@dataclass(frozen=True)
class IntegratorOptions:
    step_count: int = 2048
    method: str = "midpoint_exponential"
    tolerance: float = 1e-10

    def __post_init__(self):
        if int(self.step_count) != self.step_count or self.step_count < 16:
            raise ValueError("step_count must be an integer >= 16")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")


def su2_step(h0: float, hvec, dt: float) -> np.ndarray:
    """Exact ``exp(-i (h0 + h.sigma) dt)`` as a 2x2 matrix."""
    hx, hy, hz = hvec
    h = math.sqrt(hx * hx + hy * hy + hz * hz)
    c = math.cos(h * dt)
    s = math.sin(h * dt) / h if h > 0 else dt
    ph = cmath.exp(-1j * h0 * dt)
    return ph * np.array(
        [[c - 1j * s * hz, -1j * s * (hx - 1j * hy)], [-1j * s * (hx + 1j * hy), c + 1j * s * hz]]
    )


def _apply_step(c0, c1, h0, hx, hy, hz, dt):
    h = math.sqrt(hx * hx + hy * hy + hz * hz)
    c = math.cos(h * dt)
    s = math.sin(h * dt) / h if h > 0 else dt
    n0 = c * c0 - 1j * s * (hz * c0 + complex(hx, -hy) * c1)
    n1 = c * c1 - 1j * s * (complex(hx, hy) * c0 - hz * c1)
    if h0:
        ph = cmath.exp(-1j * h0 * dt)
        n0, n1 = n0 * ph, n1 * ph
    return n0, n1


def _stationary_states(h0: float, hvec, psi0: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Closed-form ``U(t) psi0`` for every entry of ``t``, shape ``(n, 2)``."""
    hx, hy, hz = hvec
    h = math.sqrt(hx * hx + hy * hy + hz * hz)
    c = np.cos(h * t)
    s = np.sin(h * t) / h if h > 0 else t.astype(float)
    c0, c1 = psi0
    n0 = c * c0 - 1j * s * (hz * c0 + complex(hx, -hy) * c1)
    n1 = c * c1 - 1j * s * (complex(hx, hy) * c0 - hz * c1)
    ph = np.exp(-1j * h0 * t)
    return np.stack([n0 * ph, n1 * ph], axis=-1)


def evolve_stationary(config: ConstantField, psi0, t: float) -> PureQubitState:
    """Apply the constant-field propagator for time ``t``."""
    if not isinstance(config, ConstantField):
        raise TypeError("evolve_stationary needs a ConstantField")
    if not math.isfinite(t):
        raise ValueError("t must be finite")
    psi0 = as_state(psi0)
    out = _stationary_states(config.h0, config.hvec, psi0.vector, np.array([t]))[0]
    return PureQubitState.from_vector(out)


def evolve_commuting(config, psi0, t: float, t0: float = 0.0) -> PureQubitState:
    """Propagate under a field of fixed direction and varying strength.

    Raises:
        ValueError: if the sampled Hamiltonians fail to commute; use
            :func:`evolve_ordered` for such fields.
    """
    if isinstance(config, ConstantField):
        return PureQubitState.from_vector(
            _stationary_states(config.h0, config.hvec, as_state(psi0).vector, np.array([t - t0]))[0]
        )
    if not isinstance(config, ScaledDirectionField) or not check_commuting(config, t0, t):
        raise ValueError("Hamiltonian does not commute with itself in time; use evolve_ordered")
    angle = config.amplitude_integral(t0, t)
    hvec = angle * np.array(config.direction)
    out = _stationary_states(config.h0 * (t - t0), hvec, as_state(psi0).vector, np.array([1.0]))[0]
    return PureQubitState.from_vector(out)


def _march(config, c0, c1, t0, t1, steps, method):
    """Integrate from t0 to t1 in ``steps`` equal steps; returns state and drift."""
    dt = (t1 - t0) / steps
    drift = 0.0
    for k in range(steps):
        ta = t0 + k * dt
        if method == "midpoint_exponential":
            h0, h = config.field(ta + 0.5 * dt)
            if not (math.isfinite(h0) and np.all(np.isfinite(h))):
                raise NumericalError(f"non-finite field at t={ta + 0.5 * dt!r}")
            c0, c1 = _apply_step(c0, c1, h0, h[0], h[1], h[2], dt)
        else:
            psi = np.array([c0, c1])
            rhs = lambda s, v: -1j * _matvec(config, s, v)
            k1 = rhs(ta, psi)
            k2 = rhs(ta + dt / 2, psi + dt / 2 * k1)
            k3 = rhs(ta + dt / 2, psi + dt / 2 * k2)
            k4 = rhs(ta + dt, psi + dt * k3)
            psi = psi + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
            norm = float(np.linalg.norm(psi))
            drift = max(drift, abs(norm - 1.0))
            c0, c1 = psi[0] / norm, psi[1] / norm
    drift = max(drift, abs(math.sqrt(abs(c0) ** 2 + abs(c1) ** 2) - 1.0))
    return c0, c1, drift


def _matvec(config, t, v):
    h0, (hx, hy, hz) = config.field(t)
    if not math.isfinite(h0 + hx + hy + hz):
        raise NumericalError(f"non-finite field at t={t!r}")
    return np.array([(h0 + hz) * v[0] + complex(hx, -hy) * v[1], complex(hx, hy) * v[0] + (h0 - hz) * v[1]])


def evolve_ordered(config: FieldConfiguration, psi0, t0: float, t1: float,
                   opts: Optional[IntegratorOptions] = None) -> PureQubitState:
    """Time-ordered propagation by products of short exact exponentials.

    The step count doubles until the norm drift is below ``opts.tolerance``.

    Raises:
        ValueError: if ``t1 < t0``.
        NumericalError: non-finite field values, or the tolerance is still
            unmet at ``2**22`` steps (the achieved drift is attached).
    """
    opts = opts or IntegratorOptions()
    if t1 < t0:
        raise ValueError("t1 must not precede t0")
    psi0 = as_state(psi0)
    if t1 == t0:
        return psi0
    steps = opts.step_count
    while True:
        c0, c1, drift = _march(config, psi0.c0, psi0.c1, t0, t1, steps, opts.method)
        if drift <= opts.tolerance:
            return PureQubitState.from_vector(np.array([c0, c1]) / math.hypot(abs(c0), abs(c1)))
        if steps * 2 > MAX_STEPS:
            raise NumericalError("integrator tolerance unreachable", residual=drift)
        steps *= 2


def ordered_raw(config: FieldConfiguration, psi0, t0: float, t1: float,
                steps: int = 2048, method: str = "midpoint_exponential"):
    """Unnormalized product-formula result and its norm drift, for diagnostics."""
    psi0 = as_state(psi0)
    c0, c1, drift = _march(config, psi0.c0, psi0.c1, t0, t1, steps, method)
    return np.array([c0, c1]), drift


def rotating_field_states(omega: float, nu: float, t) -> np.ndarray:
    """Vectorized closed-form rotating-field evolution of ``|0>``, shape ``(n, 2)``."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    big = math.hypot(omega, nu)
    if big == 0.0:
        return np.stack([np.ones_like(t, dtype=complex), np.zeros_like(t, dtype=complex)], axis=-1)
    c, s = np.cos(0.5 * big * t), np.sin(0.5 * big * t)
    c0 = (c + 1j * (nu / big) * s) * np.exp(-0.5j * nu * t)
    c1 = -1j * (omega / big) * s * np.exp(0.5j * nu * t)
    return np.stack([c0, c1], axis=-1)


def rotating_field_state(omega: float, nu: float, t: float) -> PureQubitState:
    """State reached from ``|0>`` under the rotating field after time ``t``."""
    return PureQubitState.from_vector(rotating_field_states(omega, nu, t)[0])


def _rotating_states(config: RotatingXYField, psi0: np.ndarray, t: np.ndarray) -> np.ndarray:
    # psi(t) = exp(-i nu t sz/2) exp(-i H_rf t) psi0 with H_rf = (omega sx - nu sz)/2
    w, nu = config.omega, config.nu
    rf = _stationary_states(0.0, (0.5 * w, 0.0, -0.5 * nu), psi0, t)
    return np.stack([rf[:, 0] * np.exp(-0.5j * nu * t), rf[:, 1] * np.exp(0.5j * nu * t)], axis=-1)


_GL_X, _GL_W = np.polynomial.legendre.leggauss(10)


def _vectorized(fn):
    def call(x):
        try:
            out = np.asarray(fn(x), dtype=float)
            if out.shape == np.shape(x):
                return out
        except (TypeError, ValueError):
            pass
        return np.vectorize(lambda v: float(fn(v)))(x)

    return call


def parametric_states(config: ParametricField, t) -> np.ndarray:
    """``e^{-i phi(t)} (cos a |0> + e^{ib} sin a |1>)`` with the transport phase.

    The phase is accumulated interval by interval with 10-point Gauss-Legendre
    rules, which is exact to roundoff for the smooth sweeps used here;
    :func:`~complexkit.hamiltonian.uzdin_phase` is the adaptive reference.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    alpha, beta, beta_dot = (_vectorized(f) for f in (config.alpha, config.beta, config.beta_dot))
    start = uzdin_phase(config.alpha, config.beta_dot, t[0])
    if len(t) > 1:
        mid, half = 0.5 * (t[1:] + t[:-1]), 0.5 * (t[1:] - t[:-1])
        x = mid[:, None] + half[:, None] * _GL_X[None, :]
        pieces = half * ((beta_dot(x) * np.sin(alpha(x)) ** 2) @ _GL_W)
        phase = start + np.concatenate([[0.0], np.cumsum(pieces)])
    else:
        phase = np.array([start])
    a, b = alpha(t), beta(t)
    g = np.exp(-1j * phase)
    return np.stack([g * np.cos(a), g * np.exp(1j * b) * np.sin(a)], axis=-1)


def _numeric_states(config, psi0, times, opts):
    n = len(times)
    per = max(1, math.ceil(opts.step_count / max(n - 1, 1)))
    out = np.empty((n, 2), dtype=complex)
    c0, c1 = psi0
    out[0] = c0, c1
    for k in range(1, n):
        steps = per
        while True:
            a0, a1, drift = _march(config, c0, c1, times[k - 1], times[k], steps, opts.method)
            if drift <= opts.tolerance:
                break
            if steps * 2 > MAX_STEPS:
                raise NumericalError("integrator tolerance unreachable", residual=drift)
            steps *= 2
        norm = math.hypot(abs(a0), abs(a1))
        c0, c1 = a0 / norm, a1 / norm
        out[k] = c0, c1
    return out


def _angles(states: np.ndarray, bloch: np.ndarray, hvecs: np.ndarray):
    """Polar angle, unwrapped azimuth and departure azimuth at each sample.

    At a pole the azimuth is undefined. We assign the azimuth from which the
    trajectory arrives (or towards which it departs, for the first sample),
    read off the tangent ``da/dt = 2 h x a``. A path running straight through
    a pole flips its azimuth by pi there, so the third array holds the
    azimuth of departure, which differs from ``phi`` only at interior poles.
    """
    r0, r1 = np.abs(states[:, 0]), np.abs(states[:, 1])
    theta = 2.0 * np.arctan2(r1, r0)
    phi = np.angle(states[:, 1]) - np.angle(states[:, 0])
    pole = np.minimum(r0, r1) < POLE_TOL
    depart = {}
    if pole.any():
        tangent = 2.0 * np.cross(hvecs, bloch)
        for k in np.flatnonzero(pole):
            tx, ty = tangent[k, 0], tangent[k, 1]
            if math.hypot(tx, ty) > 1e-12:
                phi[k] = math.atan2(ty, tx) if k == 0 else math.atan2(-ty, -tx)
                if 0 < k < len(phi) - 1:
                    depart[k] = math.atan2(ty, tx)
            else:
                phi[k] = np.nan
        good = ~np.isnan(phi)
        if not good.any():
            phi[:] = 0.0
        else:
            idx = np.arange(len(phi))
            # nearest well-defined neighbour
            src = np.interp(idx, idx[good], idx[good])
            phi = np.where(good, phi, phi[np.round(src).astype(int)])
    phi = np.unwrap(phi)
    phi_depart = phi.copy()
    for k, raw in depart.items():
        phi_depart[k] = raw + 2 * math.pi * round((phi[k + 1] - raw) / (2 * math.pi))
    return theta, phi, phi_depart


@dataclass(frozen=True)
class TrajectorySample:
    t: float
    state: PureQubitState
    bloch: BlochVector
    angles: SphericalAngles
    deltaE: float


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Uniformly sampled evolution ``t -> psi(t)`` stored column-wise.

    Attributes:
        times: Sample times, strictly increasing.
        states: Amplitudes, shape ``(n, 2)``.
        bloch: Bloch vectors, shape ``(n, 3)``.
        theta, phi: Spherical angles; ``phi`` is unwrapped.
        delta_e: Energy uncertainty at each sample.
        hvecs: Field vectors (in the same frame as ``bloch``).
        config: The field configuration.
        psi0: Initial state.
        method: ``"closed_form"`` or the numerical method name.
        basis: Optional unitary ``W``; when set, everything is expressed in
            the basis whose vectors are the rows of ``W``.
        phi_departure: Azimuth just after each sample; equals ``phi`` except
            where the path crosses a pole.
    """

    times: np.ndarray
    states: np.ndarray
    bloch: np.ndarray
    theta: np.ndarray
    phi: np.ndarray
    delta_e: np.ndarray
    hvecs: np.ndarray
    config: FieldConfiguration
    psi0: PureQubitState
    method: str
    numeric: bool = False
    options: IntegratorOptions = field(default_factory=IntegratorOptions)
    basis: Optional[np.ndarray] = None
    phi_departure: Optional[np.ndarray] = None

    @property
    def t_a(self) -> float:
        return float(self.times[0])

    @property
    def t_b(self) -> float:
        return float(self.times[-1])

    def __len__(self):
        return len(self.times)

    @property
    def samples(self) -> list[TrajectorySample]:
        return [
            TrajectorySample(
                float(self.times[k]),
                PureQubitState.from_vector(self.states[k]),
                BlochVector.from_array(self.bloch[k]),
                SphericalAngles(float(self.theta[k]), float(self.phi[k])),
                float(self.delta_e[k]),
            )
            for k in range(len(self.times))
        ]

    def refined(self, factor: int) -> "Trajectory":
        """Same evolution sampled ``factor`` times more densely."""
        n = (len(self.times) - 1) * factor + 1
        traj = trajectory(self.config, self.psi0, self.t_a, self.t_b, n,
                          numeric=self.numeric, options=self.options)
        return traj if self.basis is None else traj.in_basis(self.basis)

    def in_basis(self, W) -> "Trajectory":
        """Re-express the trajectory in the orthonormal basis given by the rows of ``W``."""
        from .geometry import su2_to_so3

        W = np.asarray(W, dtype=complex)
        if self.basis is not None:
            W = W @ self.basis
        R = su2_to_so3(W)
        src = self if self.basis is None else _drop_basis(self)
        states = src.states @ W.T
        bloch = src.bloch @ R.T
        hvecs = src.hvecs @ R.T
        theta, phi, dep = _angles(states, bloch, hvecs)
        return replace(src, states=states, bloch=bloch, hvecs=hvecs, theta=theta, phi=phi,
                       phi_departure=dep, basis=W)


def _drop_basis(traj: Trajectory) -> Trajectory:
    from .geometry import su2_to_so3

    Wd = traj.basis.conj().T
    R = su2_to_so3(Wd)
    states = traj.states @ Wd.T
    bloch = traj.bloch @ R.T
    hvecs = traj.hvecs @ R.T
    theta, phi, dep = _angles(states, bloch, hvecs)
    return replace(traj, states=states, bloch=bloch, hvecs=hvecs, theta=theta, phi=phi,
                   phi_departure=dep, basis=None)


def trajectory(config: FieldConfiguration, psi0, t0: float, t1: float, n: int,
               numeric: bool = False, options: Optional[IntegratorOptions] = None) -> Trajectory:
    """Sample the evolution of ``psi0`` at ``n`` uniform times in ``[t0, t1]``.

    Closed forms are used for constant, fixed-direction, rotating and
    (matching-initial-state) parametric fields; anything else, or
    ``numeric=True``, goes through the ordered integrator.

    A single sample is allowed when ``t1 == t0``.
    """
    options = options or IntegratorOptions()
    psi0 = as_state(psi0)
    if not (math.isfinite(t0) and math.isfinite(t1)):
        raise ValueError("time bounds must be finite")
    if n == 1 and t1 == t0:
        times = np.array([float(t0)])
    else:
        if n < 2 or not t1 > t0:
            raise ValueError("need n >= 2 samples and t1 > t0")
        times = np.linspace(t0, t1, n)
    v0 = psi0.vector
    method = "closed_form"
    if numeric:
        states = _numeric_states(config, v0, times, options)
        method = options.method
    elif isinstance(config, ConstantField):
        states = _stationary_states(config.h0, config.hvec, v0, times - t0)
    elif isinstance(config, RotatingXYField):
        states = _rotating_states(config, v0, times)
        if t0 != 0.0:
            # closed form is anchored at t = 0; evolve back to get psi(0)
            U = np.column_stack([_rotating_states(config, e, np.array([t0]))[0] for e in np.eye(2)])
            states = _rotating_states(config, U.conj().T @ v0, times)
    elif isinstance(config, ScaledDirectionField) and check_commuting(config, t0, t1):
        states = np.array([evolve_commuting(config, psi0, t, t0).vector for t in times])
    elif isinstance(config, ParametricField) and phase_equivalent(
        psi0, PureQubitState.from_vector(parametric_states(config, np.array([t0]))[0])
    ):
        m = parametric_states(config, times)
        states = m * np.vdot(m[0], v0)
    else:
        states = _numeric_states(config, v0, times, options)
        method = options.method
    states = states / np.linalg.norm(states, axis=1, keepdims=True)
    bloch = bloch_array(states)
    hvecs = np.array([config.field(t)[1] for t in times])
    ah = np.einsum("ij,ij->i", bloch, hvecs)
    delta_e = np.sqrt(np.maximum(np.einsum("ij,ij->i", hvecs, hvecs) - ah * ah, 0.0))
    theta, phi, dep = _angles(states, bloch, hvecs)
    return Trajectory(times, states, bloch, theta, phi, delta_e, hvecs, config, psi0,
                      method, numeric, options, phi_departure=dep)

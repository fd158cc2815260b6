"""Pure qubit states, Bloch-sphere angles and overlaps."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

NORM_TOL = 1e-12
RENORM_TOL = 1e-9
POLE_TOL = 1e-12


@dataclass(frozen=True)
class PureQubitState:
    """Normalized state ``c0|0> + c1|1>``.

    States within ``RENORM_TOL`` of unit norm are silently renormalized so
    that integrator drift does not leak into downstream geometry; anything
    further off is rejected.
    """

    c0: complex
    c1: complex

    def __post_init__(self):
        c0, c1 = complex(self.c0), complex(self.c1)
        if not all(math.isfinite(x) for x in (c0.real, c0.imag, c1.real, c1.imag)):
            raise ValueError("state amplitudes must be finite")
        norm2 = abs(c0) ** 2 + abs(c1) ** 2
        err = abs(norm2 - 1.0)
        if err > RENORM_TOL:
            raise ValueError(f"state is not normalized (|c0|^2+|c1|^2 = {norm2!r})")
        if err > NORM_TOL:
            scale = 1.0 / math.sqrt(norm2)
            c0, c1 = c0 * scale, c1 * scale
        object.__setattr__(self, "c0", c0)
        object.__setattr__(self, "c1", c1)

    @classmethod
    def from_vector(cls, vec: Iterable[complex]) -> "PureQubitState":
        c0, c1 = np.asarray(vec, dtype=complex).reshape(2)
        return cls(complex(c0), complex(c1))

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.c0, self.c1], dtype=complex)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.vector, dtype=dtype)


@dataclass(frozen=True)
class SphericalAngles:
    """Polar angle ``theta`` in [0, pi] and azimuth ``phi`` (radians)."""

    theta: float
    phi: float


@dataclass(frozen=True)
class BlochVector:
    x: float
    y: float
    z: float

    @classmethod
    def from_array(cls, arr) -> "BlochVector":
        x, y, z = np.asarray(arr, dtype=float).reshape(3)
        return cls(float(x), float(y), float(z))

    @property
    def array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.array, dtype=dtype)

    def norm(self) -> float:
        return math.sqrt(self.x**2 + self.y**2 + self.z**2)


ZERO = PureQubitState(1.0, 0.0)
ONE = PureQubitState(0.0, 1.0)
PLUS = PureQubitState(1 / math.sqrt(2), 1 / math.sqrt(2))


def as_state(psi) -> PureQubitState:
    """Coerce a state or a length-2 array into a :class:`PureQubitState`."""
    if isinstance(psi, PureQubitState):
        return psi
    return PureQubitState.from_vector(psi)


def as_vec3(v) -> np.ndarray:
    """Coerce a :class:`BlochVector` or 3-sequence into a float array."""
    if isinstance(v, BlochVector):
        return v.array
    return np.asarray(v, dtype=float)


def from_angles(theta: float, phi: float) -> PureQubitState:
    """Return ``cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>``."""
    if not (math.isfinite(theta) and math.isfinite(phi)):
        raise ValueError("angles must be finite")
    if theta < 0.0 or theta > math.pi:
        raise ValueError(f"theta must lie in [0, pi], got {theta!r}")
    return PureQubitState(math.cos(theta / 2), cmath.exp(1j * phi) * math.sin(theta / 2))


def to_angles(state: PureQubitState) -> SphericalAngles:
    """Spherical angles of ``state``.

    The azimuth is ``arg(c1) - arg(c0)`` reduced to (-pi, pi], with both
    phases taken from the two-argument arctangent. At the poles the azimuth
    is undefined and is reported as 0.
    """
    state = as_state(state)
    r0, r1 = abs(state.c0), abs(state.c1)
    theta = 2.0 * math.atan2(r1, r0)
    if min(r0, r1) < POLE_TOL:
        return SphericalAngles(theta, 0.0)
    phi = math.atan2(state.c1.imag, state.c1.real) - math.atan2(state.c0.imag, state.c0.real)
    phi = math.remainder(phi, 2 * math.pi)
    if phi <= -math.pi:
        phi += 2 * math.pi
    return SphericalAngles(theta, phi)


def to_bloch(state: PureQubitState) -> BlochVector:
    state = as_state(state)
    cross = state.c0.conjugate() * state.c1
    return BlochVector(
        2.0 * cross.real,
        2.0 * cross.imag,
        abs(state.c0) ** 2 - abs(state.c1) ** 2,
    )


def bloch_array(states: np.ndarray) -> np.ndarray:
    """Vectorized Bloch vectors for an ``(n, 2)`` array of amplitudes."""
    states = np.asarray(states, dtype=complex)
    cross = np.conj(states[..., 0]) * states[..., 1]
    return np.stack(
        [2 * cross.real, 2 * cross.imag, np.abs(states[..., 0]) ** 2 - np.abs(states[..., 1]) ** 2],
        axis=-1,
    )


def overlap(a: PureQubitState, b: PureQubitState) -> complex:
    """Inner product ``<a|b>``."""
    a, b = as_state(a), as_state(b)
    return a.c0.conjugate() * b.c0 + a.c1.conjugate() * b.c1


def phase_equivalent(a: PureQubitState, b: PureQubitState, tol: float = 1e-10) -> bool:
    """True when ``a`` and ``b`` differ only by a global phase, up to ``tol``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    return 1.0 - abs(overlap(a, b)) ** 2 <= tol

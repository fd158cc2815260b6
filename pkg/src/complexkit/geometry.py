"""Distances, path lengths, curvature and rotations on the Bloch sphere."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate

from .errors import DegenerateGeometryError
from .hamiltonian import PAULI
from .qstate import as_state, as_vec3, overlap

KAPPA_DENOM_TOL = 1e-14
METRIC_STEP = 1e-5


def geodesic_distance(psi_a, psi_b) -> float:
    """Fubini-Study distance ``2 arccos |<A|B>|`` in [0, pi]."""
    f = min(max(abs(overlap(psi_a, psi_b)), 0.0), 1.0)
    return 2.0 * math.acos(f)


def path_length(traj) -> float:
    """``s = 2 int dE dt`` by composite Simpson on the trajectory grid."""
    delta_e = getattr(traj, "delta_e", None)
    if delta_e is None:
        raise ValueError("trajectory carries no energy-uncertainty samples")
    if len(traj.times) < 2:
        return 0.0
    return 2.0 * float(integrate.simpson(delta_e, x=traj.times))


def geodesic_efficiency(traj) -> float:
    """``eta = s0 / s`` clamped to [0, 1]."""
    s0 = geodesic_distance(traj.states[0], traj.states[-1])
    s = path_length(traj)
    if s <= 0.0:
        if s0 < 1e-12:
            return 1.0
        raise DegenerateGeometryError("zero path length between distinct endpoints")
    return min(max(s0 / s, 0.0), 1.0)


def curvature_coefficient(a, h, hdot) -> float:
    """Squared curvature of the Bloch trajectory at a single instant.

    Args:
        a: Unit Bloch vector of the state.
        h: Field vector ``h(t)``.
        hdot: Its time derivative.

    Returns:
        The nonnegative curvature coefficient. The usual three-term
        expression is evaluated as a single perfect square, which is the
        same quantity but immune to cancellation near eigenstates.

    Raises:
        DegenerateGeometryError: when the state is (numerically) an
            eigenstate of ``H`` so that the trajectory does not move.
    """
    a, h, hd = as_vec3(a), as_vec3(h), as_vec3(hdot)
    norm = float(np.linalg.norm(a))
    if abs(norm - 1.0) > 1e-9:
        raise ValueError("a must be a unit Bloch vector")
    a = a / norm
    ah = float(a @ h)
    # |a x h|^2 = h^2 - (a.h)^2 without the cancellation
    denom = float(np.sum(np.cross(a, h) ** 2))
    if denom <= KAPPA_DENOM_TOL:
        raise DegenerateGeometryError("energy uncertainty vanishes; curvature undefined")
    # For unit a, h^2 hd^2 - (h.hd)^2 - [(a.hd)h - (a.h)hd]^2 = [a.(h x hd)]^2, so the
    # three terms 4(a.h)^2/D + X^2/D^3 + 4(a.h)X/D^2 combine into one square.
    x = float(a @ np.cross(h, hd))
    kappa = (2.0 * ah * denom + x) ** 2 / denom**3
    if not math.isfinite(kappa):
        raise ArithmeticError(f"curvature coefficient overflowed: {kappa!r}")
    return kappa


@dataclass(frozen=True)
class MetricTensor2:
    g11: float
    g12: float
    g22: float

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.g11, self.g12], [self.g12, self.g22]])


_STENCIL = ((-2, 1.0 / 12), (-1, -8.0 / 12), (1, 8.0 / 12), (2, -1.0 / 12))


def _partials(fn: Callable, xi: np.ndarray, step: float):
    out = []
    for k in range(2):
        e = np.zeros(2)
        e[k] = step
        out.append(sum(w * fn(xi + m * e) for m, w in _STENCIL) / step)
    return out


def fs_and_wy_metrics(family: Callable, xi, step: float = METRIC_STEP):
    """Fubini-Study and Wigner-Yanase metric tensors of a two-parameter family.

    Derivatives use five-point central stencils. The Wigner-Yanase tensor is
    the literal ``4 tr[(d_a rho)(d_b rho)]`` with ``rho = |psi><psi|``.

    Args:
        family: Map from a 2-vector of parameters to a state (array or
            :class:`PureQubitState`).
        xi: Evaluation point.
        step: Stencil step.

    Returns:
        ``(g_fs, g_wy)`` as :class:`MetricTensor2` instances.
    """
    xi = np.asarray(xi, dtype=float).reshape(2)

    def psi(x):
        v = np.asarray(family(x), dtype=complex).reshape(2)
        if abs(np.vdot(v, v).real - 1.0) > 1e-8:
            raise ValueError("state family is not normalized along the stencil")
        return v

    def rho(x):
        v = psi(x)
        return np.outer(v, v.conj())

    v = psi(xi)
    dpsi = _partials(psi, xi, step)
    drho = _partials(rho, xi, step)
    g_fs = np.empty((2, 2))
    g_wy = np.empty((2, 2))
    for i in range(2):
        for j in range(2):
            g_fs[i, j] = (np.vdot(dpsi[i], dpsi[j]) - np.vdot(dpsi[i], v) * np.vdot(v, dpsi[j])).real
            g_wy[i, j] = 4.0 * np.trace(drho[i] @ drho[j]).real
    sym = lambda g: MetricTensor2(g[0, 0], 0.5 * (g[0, 1] + g[1, 0]), g[1, 1])
    return sym(g_fs), sym(g_wy)


def cross_matrix(v) -> np.ndarray:
    """Matrix ``M`` with ``M @ x = v x x``."""
    x, y, z = as_vec3(v)
    return np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])


def _unit_axis(n) -> np.ndarray:
    n = as_vec3(n)
    if abs(np.linalg.norm(n) - 1.0) > 1e-12:
        raise ValueError("rotation axis must be a unit vector")
    return n


def rodrigues_rotate(n, angle: float, a0) -> np.ndarray:
    """Rotate ``a0`` by ``angle`` about unit axis ``n`` (right-hand rule)."""
    n, a0 = _unit_axis(n), as_vec3(a0)
    na = np.cross(n, a0)
    return a0 + math.sin(angle) * na + (1.0 - math.cos(angle)) * np.cross(n, na)


def rotation_matrix(n, angle: float) -> np.ndarray:
    K = cross_matrix(_unit_axis(n))
    return np.eye(3) + math.sin(angle) * K + (1.0 - math.cos(angle)) * (K @ K)


def su2_to_so3(U) -> np.ndarray:
    """Rotation ``R_ij = tr(sigma_i U sigma_j U^dag) / 2`` induced by ``U``."""
    U = np.asarray(U, dtype=complex)
    if np.linalg.norm(U.conj().T @ U - np.eye(2)) > 1e-10:
        raise ValueError("input is not unitary")
    Ud = U.conj().T
    R = np.empty((3, 3))
    for i, si in enumerate(PAULI):
        for j, sj in enumerate(PAULI):
            R[i, j] = 0.5 * np.trace(si @ U @ sj @ Ud).real
    return R

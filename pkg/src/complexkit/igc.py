"""Information-geometric complexity from Fubini-Study volumes on the Bloch sphere."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import DegenerateGeometryError, NumericalError
from .geometry import path_length

AZIMUTH_DEGENERATE = 1e-9
REFINE_TOL = 1e-8
MAX_NODES = 2**20


@dataclass(frozen=True)
class AngleRange:
    theta_min: float
    theta_max: float
    phi_min: float
    phi_max: float

    def contains(self, theta, phi, tol: float = 1e-9) -> bool:
        theta, phi = np.asarray(theta), np.asarray(phi)
        return bool(
            np.all((theta >= self.theta_min - tol) & (theta <= self.theta_max + tol))
            and np.all((phi >= self.phi_min - tol) & (phi <= self.phi_max + tol))
        )


@dataclass(frozen=True)
class VolumeReport:
    v_of_t: np.ndarray
    accessed: float
    accessible: float
    complexity: float
    length_scale: float
    angle_range: AngleRange


def _azimuth_degenerate(traj) -> bool:
    return float(np.ptp(traj.phi)) < AZIMUTH_DEGENERATE


def _volumes(traj, phi) -> np.ndarray:
    th = traj.theta
    if _azimuth_degenerate(traj):
        return 0.5 * np.abs(th - th[0])
    return 0.25 * np.abs((math.cos(th[0]) - np.cos(th)) * (phi - traj.phi[0]))


def volume_series(traj) -> np.ndarray:
    """Instantaneous volume ``V(t)`` at every sample.

    This is the FS area of the rectangle spanned between the angles at
    ``t_A`` and at ``t``. When the azimuth never moves the rectangle is
    flat, and the meridian length ``|theta - theta_A| / 2`` is used instead.
    """
    return _volumes(traj, traj.phi)


def instantaneous_volume(traj, t_index: int) -> float:
    return float(volume_series(traj)[t_index])


def _crossings(traj) -> np.ndarray:
    dep = getattr(traj, "phi_departure", None)
    if dep is None:
        return np.array([], dtype=int)
    return np.flatnonzero(dep != traj.phi)


def _simpson_mean(traj) -> float:
    """Simpson average of ``V``, split where the path crosses a pole.

    ``V`` jumps at such a crossing, and a single Simpson rule across the jump
    would only converge linearly.
    """
    left = volume_series(traj)
    cuts = _crossings(traj)
    if len(cuts) == 0:
        total = integrate.simpson(left, x=traj.times)
    else:
        right = _volumes(traj, traj.phi_departure)
        bounds = [0, *cuts.tolist(), len(traj.times) - 1]
        total = 0.0
        for a, b in zip(bounds[:-1], bounds[1:]):
            seg = left[a:b + 1].copy()
            seg[0] = right[a]
            total += integrate.simpson(seg, x=traj.times[a:b + 1])
    return float(total) / (traj.t_b - traj.t_a)


def accessed_volume(traj, refine: bool = True) -> float:
    """Time average ``V-bar`` of the instantaneous volume.

    With ``refine`` the trajectory is resampled four times more densely until
    two successive Simpson estimates agree to ``1e-8``.
    """
    if len(traj.times) < 3:
        raise ValueError("need at least 3 samples")
    value = _simpson_mean(traj)
    if not refine:
        return value
    factor = 1
    while True:
        factor *= 4
        if (len(traj.times) - 1) * factor + 1 > MAX_NODES:
            raise NumericalError("accessed volume did not converge")
        new = _simpson_mean(traj.refined(factor))
        if abs(new - value) < REFINE_TOL:
            return new
        value = new


def refined_extreme(y: np.ndarray, k: int, want_max: bool) -> float:
    """Vertex of the parabola through samples ``k-1, k, k+1`` (grid value at the ends)."""
    if k == 0 or k == len(y) - 1:
        return float(y[k])
    y0, y1, y2 = y[k - 1], y[k], y[k + 1]
    curv = y2 - 2 * y1 + y0
    if curv == 0 or (curv < 0) != want_max:
        return float(y1)
    vertex = y1 - (y2 - y0) ** 2 / (8 * curv)
    bound = max(abs(y1 - y0), abs(y1 - y2))
    shift = float(np.clip(vertex - y1, -bound, bound))
    return float(y1 + shift)


def angle_range(traj) -> AngleRange:
    th, ph = traj.theta, traj.phi
    cuts = set(_crossings(traj).tolist())

    def phi_extreme(k, want_max):
        if cuts & {k - 1, k}:
            # the azimuth flips between these samples; a parabola would overshoot
            return float(ph[k])
        return refined_extreme(ph, k, want_max)

    t_lo = max(0.0, refined_extreme(th, int(np.argmin(th)), False))
    t_hi = min(math.pi, refined_extreme(th, int(np.argmax(th)), True))
    p_lo = phi_extreme(int(np.argmin(ph)), False)
    p_hi = phi_extreme(int(np.argmax(ph)), True)
    if cuts:
        dep = traj.phi_departure
        p_lo, p_hi = min(p_lo, float(dep.min())), max(p_hi, float(dep.max()))
    return AngleRange(t_lo, t_hi, p_lo, p_hi)


def accessible_volume(traj) -> float:
    """FS volume of the smallest angle rectangle containing the trajectory."""
    r = angle_range(traj)
    if _azimuth_degenerate(traj):
        return 0.5 * (r.theta_max - r.theta_min)
    return 0.25 * (math.cos(r.theta_min) - math.cos(r.theta_max)) * (r.phi_max - r.phi_min)


def _ratio(v_max: float, v_bar: float) -> float:
    if v_max <= 1e-14:
        raise DegenerateGeometryError("no accessible region: the state does not move")
    return min(max((v_max - v_bar) / v_max, 0.0), 1.0)


def ig_complexity(traj, refine: bool = True) -> float:
    """``C = (V_max - V-bar) / V_max``, the unexplored fraction of the accessible region."""
    return _ratio(accessible_volume(traj), accessed_volume(traj, refine))


def complexity_length_scale(traj, refine: bool = True) -> float:
    """``L_C = s sqrt(V_max / V-bar)``."""
    v_bar = accessed_volume(traj, refine)
    if v_bar <= 0.0:
        raise DegenerateGeometryError("accessed volume vanishes")
    return path_length(traj) * math.sqrt(accessible_volume(traj) / v_bar)


def volume_report(traj, refine: bool = True) -> VolumeReport:
    v_bar = accessed_volume(traj, refine)
    v_max = accessible_volume(traj)
    c = _ratio(v_max, v_bar)
    l_c = path_length(traj) * math.sqrt(v_max / v_bar) if v_bar > 0 else math.inf
    return VolumeReport(volume_series(traj), v_bar, v_max, c, l_c, angle_range(traj))


def fs_length_series(traj) -> np.ndarray:
    """Cumulative Fubini-Study arc length ``int_{t_A}^t dE dt'`` at each sample."""
    if len(traj.times) < 2:
        return np.zeros(len(traj.times))
    return integrate.cumulative_simpson(traj.delta_e, x=traj.times, initial=0.0)

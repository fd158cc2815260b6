"""Krylov bases, spread complexity and the qubit closed forms."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np
from scipy import integrate

from .errors import NumericalError
from .qstate import as_vec3

B_TERMINATE = 1e-10
LEAKAGE_TOL = 1e-6
AVERAGE_NODES = 1025


@dataclass(frozen=True, eq=False)
class KrylovBasis:
    """Orthonormal Krylov vectors (columns of ``vectors``) with Lanczos coefficients.

    ``b_coeffs[0]`` is 0 by convention and ``b_coeffs[dimension]`` is the
    residual norm at which the recursion stopped.
    """

    vectors: np.ndarray
    a_coeffs: np.ndarray
    b_coeffs: np.ndarray
    dimension: int

    def tridiagonal(self) -> np.ndarray:
        d = self.dimension
        T = np.diag(self.a_coeffs[:d]).astype(float)
        off = self.b_coeffs[1:d]
        return T + np.diag(off, 1) + np.diag(off, -1)


@dataclass(frozen=True)
class SpreadWeights:
    """Weights ``c_n``; the default ``c_n = n`` gives Krylov complexity."""

    values: Optional[Sequence[float]] = None

    def __post_init__(self):
        if self.values is not None and np.any(np.diff(np.asarray(self.values, dtype=float)) < 0):
            raise ValueError("spread weights must be nondecreasing")

    def weights(self, dim: int) -> np.ndarray:
        if self.values is None:
            return np.arange(dim, dtype=float)
        w = np.asarray(self.values, dtype=float)
        if len(w) < dim:
            raise ValueError(f"need at least {dim} weights")
        return w[:dim]


def lanczos(H, psi0) -> KrylovBasis:
    """Lanczos recursion with full reorthogonalization.

    Args:
        H: Hermitian ``d x d`` matrix.
        psi0: Unit ``d``-vector, the first Krylov vector.

    Returns:
        The Krylov basis. The recursion stops when the residual norm falls
        below ``1e-10`` or the basis is complete.
    """
    H = np.asarray(H, dtype=complex)
    d = H.shape[0]
    if H.shape != (d, d) or np.linalg.norm(H - H.conj().T) > 1e-10:
        raise ValueError("H must be a square Hermitian matrix")
    k = np.asarray(psi0, dtype=complex).reshape(d)
    if abs(np.linalg.norm(k) - 1.0) > 1e-9:
        raise ValueError("initial vector must have unit norm")
    vecs = [k]
    a_coeffs, b_coeffs = [], [0.0]
    while True:
        kn = vecs[-1]
        a_n = float(np.vdot(kn, H @ kn).real)
        a_coeffs.append(a_n)
        A = H @ kn - a_n * kn
        if len(vecs) > 1:
            A = A - b_coeffs[-1] * vecs[-2]
        for _ in range(2):
            for v in vecs:
                A = A - np.vdot(v, A) * v
        b = float(np.linalg.norm(A))
        b_coeffs.append(b)
        if b < B_TERMINATE or len(vecs) == d:
            break
        vecs.append(A / b)
    return KrylovBasis(np.column_stack(vecs), np.array(a_coeffs), np.array(b_coeffs), len(vecs))


def krylov_probabilities(psi_t, basis: KrylovBasis) -> np.ndarray:
    """``p_n = |<K_n|psi_t>|^2``."""
    psi_t = np.asarray(psi_t, dtype=complex)
    return np.abs(basis.vectors.conj().T @ psi_t) ** 2


def spread_complexity(psi_t, basis: KrylovBasis, weights: Optional[SpreadWeights] = None) -> float:
    """Weighted spread ``sum_n c_n p_n`` of ``psi_t`` over the Krylov chain.

    Raises:
        NumericalError: if more than ``1e-6`` of the probability lies outside
            the Krylov subspace.
    """
    p = krylov_probabilities(psi_t, basis)
    leak = abs(1.0 - p.sum())
    if leak > LEAKAGE_TOL:
        raise NumericalError("state leaks out of the Krylov subspace", residual=leak)
    w = (weights or SpreadWeights()).weights(basis.dimension)
    return float(w @ p)


def energy_basis(H) -> np.ndarray:
    """Eigenvectors of ``H`` as columns, ordered by increasing energy."""
    _, vecs = np.linalg.eigh(np.asarray(H, dtype=complex))
    return vecs


def basis_cost(psi_t, basis_vectors, weights: Optional[SpreadWeights] = None) -> float:
    """Spread cost of ``psi_t`` in an arbitrary ordered orthonormal basis (columns)."""
    B = np.asarray(basis_vectors, dtype=complex)
    p = np.abs(B.conj().T @ np.asarray(psi_t, dtype=complex)) ** 2
    return float((weights or SpreadWeights()).weights(B.shape[1]) @ p)


def _check_unit(v, name):
    if abs(np.linalg.norm(v) - 1.0) > 1e-9:
        raise ValueError(f"{name} must be a unit vector")


def krylov_qubit_stationary(a0, n, h: float, t):
    """``sin^2(h t) (1 - (n.a0)^2)`` for a constant field of strength ``h`` along ``n``."""
    a0, n = as_vec3(a0), as_vec3(n)
    _check_unit(a0, "a0")
    _check_unit(n, "n")
    return np.sin(h * np.asarray(t)) ** 2 * (1.0 - float(n @ a0) ** 2)


def krylov_from_bloch(a0, at):
    """``(1 - a0.at)/2``; accepts single vectors or ``(n, 3)`` arrays for ``at``."""
    a0, at = as_vec3(a0), as_vec3(at)
    return 0.5 * (1.0 - at @ a0)


def rotating_field_krylov(omega: float, nu: float, t):
    big2 = omega * omega + nu * nu
    if big2 == 0.0:
        raise ValueError("omega and nu cannot both vanish")
    return omega * omega / big2 * np.sin(0.5 * math.sqrt(big2) * np.asarray(t)) ** 2


def stationary_average_krylov(h: float, n_dot_a0: float, t_i: float, t_f: float) -> float:
    """Exact time average of ``sin^2(h t)(1 - (n.a0)^2)`` over ``[t_i, t_f]``."""
    T = t_f - t_i
    if not T > 0:
        raise ValueError("t_f must exceed t_i")
    if h == 0:
        return 0.0
    mean_sin2 = 0.5 - (math.sin(2 * h * t_f) - math.sin(2 * h * t_i)) / (4 * h * T)
    return (1.0 - n_dot_a0**2) * mean_sin2


def time_averaged_krylov(k_of_t: Union[Callable, tuple], t_i: float, t_f: float,
                         closed_form: Optional[float] = None, nodes: int = AVERAGE_NODES) -> float:
    """Time average of ``K(t)`` over ``[t_i, t_f]`` by composite Simpson.

    Args:
        k_of_t: Either a callable (evaluated on ``nodes`` uniform points) or a
            ``(times, values)`` pair of samples.
        t_i, t_f: Averaging window.
        closed_form: Optional exact value; a mismatch above ``1e-8`` raises.
        nodes: Number of quadrature nodes for callables.
    """
    if not t_f > t_i:
        raise ValueError("t_f must exceed t_i")
    if callable(k_of_t):
        ts = np.linspace(t_i, t_f, max(nodes, AVERAGE_NODES))
        vals = np.array([float(k_of_t(t)) for t in ts])
    else:
        ts, vals = (np.asarray(x, dtype=float) for x in k_of_t)
    avg = float(integrate.simpson(vals, x=ts)) / (t_f - t_i)
    if closed_form is not None and abs(avg - closed_form) > 1e-8:
        raise NumericalError("quadrature disagrees with the closed-form average",
                             residual=abs(avg - closed_form))
    return avg

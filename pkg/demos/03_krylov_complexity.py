"""Krylov spread complexity of qubit evolutions."""

# %%
import math

import numpy as np

from complexkit.hamiltonian import ConstantField, RotatingXYField, matrix_at
from complexkit.krylov import (
    basis_cost,
    energy_basis,
    krylov_from_bloch,
    lanczos,
    rotating_field_krylov,
    spread_complexity,
    stationary_average_krylov,
)
from complexkit.propagator import evolve_stationary, trajectory
from complexkit.qstate import ZERO

# %% [markdown]
# Lanczos builds an orthonormal chain starting from the initial state. For a
# qubit the chain has at most two links.

# %%
omega = 1.0
geodesic = ConstantField(0.0, (0.0, omega / math.sqrt(6), 0.0))
basis = lanczos(matrix_at(geodesic, 0.0), ZERO.vector)
print("dimension:", basis.dimension, " a:", basis.a_coeffs, " b1:", basis.b_coeffs[1])

# %%
for t in (0.5, 1.0, 1.5):
    psi = evolve_stationary(geodesic, ZERO, t).vector
    print(f"K({t}) = {spread_complexity(psi, basis):.12f}   sin^2(t/sqrt6) = {math.sin(t / math.sqrt(6)) ** 2:.12f}")

# %% [markdown]
# For a qubit, K is the squared half-chord between the initial and current
# Bloch vectors. The time averages over each drive's transfer time compare
# the geodesic and tilted drives.

# %%
geo_avg = stationary_average_krylov(omega / math.sqrt(6), 0.0, 0.0, math.pi * math.sqrt(6) / 4)
tilted_avg = stationary_average_krylov(omega / 2, 1 / math.sqrt(3), 0.0, 2 * math.pi / 3)
print(f"<K> geodesic {geo_avg:.6f}, tilted {tilted_avg:.6f}")

# %% [markdown]
# Near the start, K stays below the cost of spreading over the energy
# eigenbasis, which is constant in time for a stationary drive.

# %%
H = matrix_at(geodesic, 0.0)
for t in (0.01, 0.1):
    psi = evolve_stationary(geodesic, ZERO, t).vector
    print(f"t={t}: K={spread_complexity(psi, basis):.3e}  energy-basis cost={basis_cost(psi, energy_basis(H)):.3f}")

# %% [markdown]
# A field that rotates in the xy plane stays orthogonal to the initial Bloch
# vector, yet the detuning keeps the state from ever becoming orthogonal.

# %%
for nu in (0.0, 0.5, 1.0, 2.0):
    traj = trajectory(RotatingXYField(1.0, nu), ZERO, 0.0, 4 * math.pi, 2001)
    k = krylov_from_bloch(traj.bloch[0], traj.bloch)
    print(f"nu={nu}: max K on grid {k.max():.6f}, closed form amplitude {1 / (1 + nu ** 2):.6f}, "
          f"agreement {np.max(np.abs(k - rotating_field_krylov(1.0, nu, traj.times))):.1e}")

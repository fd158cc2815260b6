"""Lengths, efficiency, curvature, metrics and rotations on the Bloch sphere."""

# %%
import math

import numpy as np
from scipy import linalg

from complexkit.geometry import (
    cross_matrix,
    curvature_coefficient,
    fs_and_wy_metrics,
    geodesic_distance,
    geodesic_efficiency,
    path_length,
    rodrigues_rotate,
    su2_to_so3,
)
from complexkit.hamiltonian import ConstantField, ParametricField, matrix_at
from complexkit.propagator import trajectory
from complexkit.qstate import ONE, PLUS, ZERO, from_angles

# %% [markdown]
# The shortest distance between two states is 2 arccos|<A|B>|. The path a drive
# actually follows is measured by integrating twice the energy uncertainty.

# %%
print("d(|0>,|+>) =", geodesic_distance(ZERO, PLUS), " d(|0>,|1>) =", geodesic_distance(ZERO, ONE))

omega = 1.0
tilted = trajectory(ConstantField(0.0, (omega / (2 * math.sqrt(3)),) * 3), ZERO, 0.0, 2 * math.pi / 3, 1025)
print(f"tilted drive: s = {path_length(tilted):.6f}, efficiency = {geodesic_efficiency(tilted):.6f} "
      f"(3 sqrt6 / 8 = {3 * math.sqrt(6) / 8:.6f})")

parametric = trajectory(ParametricField.linear(1.0, math.pi / 4, 1.0), ZERO, 0.0, math.pi / 2, 1025)
print(f"parametric drive: s = {path_length(parametric):.4f}, efficiency = {geodesic_efficiency(parametric):.4f}")

# %% [markdown]
# The curvature coefficient vanishes for great circles. It is 2 for the
# tilted drive, and 4 (nu0/omega0)^2 at the start of the parametric sweep.

# %%
print("tilted:", curvature_coefficient((0, 0, 1), np.full(3, 0.5 / math.sqrt(3)), (0, 0, 0)))
fam = ParametricField.linear(1.0, math.pi / 4, 1.0)
print("parametric near t=0:", curvature_coefficient(fam.bloch(1e-5), fam.field(1e-5)[1], fam.field_derivative(1e-5)))

# %% [markdown]
# Metric tensors of the angle family. The Fubini-Study tensor is
# diag(1/4, sin^2 theta / 4). The trace form 4 tr[(d rho)(d rho)] computed
# here is 8 times that for pure states.

# %%
def angles(xi):
    return from_angles(xi[0], xi[1]).vector


g_fs, g_wy = fs_and_wy_metrics(angles, (1.0, 0.3))
print("g_FS =\n", np.round(g_fs.matrix, 10))
print("trace form / g_FS =", np.round(g_wy.g11 / g_fs.g11, 8), np.round(g_wy.g22 / g_fs.g22, 8))

# %% [markdown]
# Every SU(2) propagator acts on Bloch vectors as a rotation. Rodrigues'
# formula gives that rotation directly.

# %%
t = 0.9
U = linalg.expm(-1j * matrix_at(ConstantField(0.0, (0.0, omega / math.sqrt(6), 0.0)), 0.0) * t)
a_t = rodrigues_rotate((0, 1, 0), 2 * omega * t / math.sqrt(6), (0, 0, 1))
print("Rodrigues:", np.round(a_t, 12))
print("adjoint action:", np.round(su2_to_so3(U) @ [0, 0, 1], 12))
print("matrix exponential:", np.round(linalg.expm(2 * t * cross_matrix((0, omega / math.sqrt(6), 0))) @ [0, 0, 1], 12))

"""Qubit states, Bloch vectors and the Hamiltonian families used throughout."""

# %%
import math

import numpy as np

from complexkit.hamiltonian import (
    ConstantField,
    ParametricField,
    RotatingXYField,
    energy_uncertainty,
    matrix_at,
    rotating_frame_transform,
    z_rotation_frame,
)
from complexkit.qstate import PLUS, ZERO, from_angles, phase_equivalent, to_angles, to_bloch

# %% [markdown]
# A pure qubit state is a point on the Bloch sphere. The polar angle sets the
# populations and the azimuth the relative phase.

# %%
psi = from_angles(math.pi / 2, math.pi / 2)
print("state on the +y axis:", psi.vector)
print("its Bloch vector:", to_bloch(psi).array)

odd = from_angles(2 * math.pi / 3, -2.5)
print("angles recovered:", to_angles(odd))

# Global phases are invisible; the comparison below ignores them.
print("e^{i pi/7}|+> equals |+> up to phase:",
      phase_equivalent(PLUS, np.exp(1j * math.pi / 7) * PLUS.vector, 1e-12))

# %% [markdown]
# Fields are written as H = h0 + h . sigma. A constant field drives
# stationary motion, a rotating transverse field does not.

# %%
omega = 1.0
geodesic = ConstantField(0.0, (0.0, omega / math.sqrt(6), 0.0))
print("H for the geodesic drive:\n", matrix_at(geodesic, 0.0))
print("energy uncertainty of |0>:", energy_uncertainty(to_bloch(ZERO).array, geodesic.field(0)[1]),
      "vs omega/sqrt(6) =", omega / math.sqrt(6))

rotating = RotatingXYField(omega=1.0, nu=0.7)
for t in (0.0, 1.0, 2.0):
    print(f"rotating field at t={t}: h = {np.round(rotating.field(t)[1], 6)}")

# %% [markdown]
# In the frame that co-rotates with the field, the rotating drive becomes a
# static one: (omega sigma_x - nu sigma_z) / 2.

# %%
static = rotating_frame_transform(rotating, z_rotation_frame(rotating.nu), 1.3)
print("rotating-frame Hamiltonian:\n", np.round(static, 12))

# %% [markdown]
# The parametric family is built backwards from a desired state path
# cos(alpha)|0> + e^{i beta} sin(alpha)|1>. Its field is always orthogonal to
# the Bloch vector, so the state never sits still.

# %%
fam = ParametricField.linear(omega0=1.0, beta0=math.pi / 4, nu0=1.0)
for t in (0.0, 0.4, 0.8):
    a, h = fam.bloch(t), fam.field(t)[1]
    print(f"t={t}: a.h = {a @ h:+.1e}, |h|^2 = {h @ h:.6f}")

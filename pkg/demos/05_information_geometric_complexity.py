"""Accessed and accessible volumes, and the complexity built from them."""

# %%
import math

import numpy as np

from complexkit.hamiltonian import ConstantField, ParametricField, RotatingXYField
from complexkit.igc import angle_range, volume_report
from complexkit.propagator import trajectory
from complexkit.qstate import ZERO
from complexkit.scenarios import two_basis_trajectories

# %% [markdown]
# The instantaneous volume is the Fubini-Study area of the angle box swept
# since the start. Its time average is compared with the largest box the
# evolution can reach. When the azimuth never changes the box degenerates to
# a meridian arc and its length is used instead.

# %%
omega = 1.0
runs = {
    "geodesic": trajectory(ConstantField(0.0, (0.0, omega / math.sqrt(6), 0.0)), ZERO, 0.0,
                           math.pi * math.sqrt(6) / 4, 1025),
    "tilted": trajectory(ConstantField(0.0, (omega / (2 * math.sqrt(3)),) * 3), ZERO, 0.0,
                         2 * math.pi / 3, 1025),
    "parametric": trajectory(ParametricField.linear(1.0, math.pi / 4, 1.0), ZERO, 0.0, math.pi / 2, 1025),
}
for name, tr in runs.items():
    rep = volume_report(tr)
    print(f"{name:>10}: V-bar={rep.accessed:.6f}  V_max={rep.accessible:.6f}  C={rep.complexity:.6f}  "
          f"L_C={rep.length_scale:.4f}")

print("tilted angle box:", angle_range(runs["tilted"]))

# %% [markdown]
# The complexity of the parametric sweep does not depend on nu0/omega0 since
# both volumes scale with that ratio.

# %%
for w0, n0 in ((1.0, 1.0), (2.0, 1.0), (1.0, 3.0)):
    tr = trajectory(ParametricField.linear(w0, math.pi / 4, n0), ZERO, 0.0, math.pi / (2 * w0), 513)
    print(f"omega0={w0}, nu0={n0}: C = {volume_report(tr).complexity:.10f}")
print("(3 pi^2 - 4) / (4 pi^2) =", (3 * math.pi ** 2 - 4) / (4 * math.pi ** 2))

# %% [markdown]
# Volumes do not depend on which orthonormal basis defines the angles, as
# long as the evolution is re-expressed consistently.

# %%
for tr in two_basis_trajectories(257):
    rep = volume_report(tr)
    print(f"basis {'computational' if tr.basis is None else 'rotated'}: V-bar={rep.accessed:.10f}, "
          f"V_max={rep.accessible:.10f}")

# %% [markdown]
# A resonant rotating field drives |0> straight through the south pole. The
# azimuth jumps by pi there, and the average is taken piecewise across the jump.

# %%
tr = trajectory(RotatingXYField(1.0, 0.0), ZERO, 0.0, 2 * math.pi, 513)
rep = volume_report(tr)
print(f"resonant drive: C = {rep.complexity:.8f}, V_max = {rep.accessible:.8f} (pi/2 = {math.pi / 2:.8f})")
print("largest jump in unwrapped azimuth:", np.max(np.abs(np.diff(tr.phi))))

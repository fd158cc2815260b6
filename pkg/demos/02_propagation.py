"""Propagating states: exact formulas where they exist, ordered products elsewhere."""

# %%
import math

import numpy as np
from numpy.polynomial import Polynomial

from complexkit.hamiltonian import ConstantField, CustomField, RotatingXYField, ScaledDirectionField
from complexkit.propagator import (
    IntegratorOptions,
    evolve_commuting,
    evolve_ordered,
    evolve_stationary,
    ordered_raw,
    rotating_field_state,
    trajectory,
)
from complexkit.qstate import PLUS, ZERO, phase_equivalent

# %% [markdown]
# A constant field along y takes |0> to |+> in the shortest possible time.

# %%
omega = 1.0
geodesic = ConstantField(0.0, (0.0, omega / math.sqrt(6), 0.0))
tf = math.pi * math.sqrt(6) / (4 * omega)
print("psi(tf) =", np.round(evolve_stationary(geodesic, ZERO, tf).vector, 12))

tilted = ConstantField(0.0, (omega / (2 * math.sqrt(3)),) * 3)
print("tilted drive reaches |+> at 2pi/3:",
      phase_equivalent(evolve_stationary(tilted, ZERO, 2 * math.pi / 3), PLUS, 1e-12))

# %% [markdown]
# When the direction is fixed and only the strength changes, the propagator
# only needs the integrated strength.

# %%
sweep = ScaledDirectionField(Polynomial([0.0, 2.0]), (-math.sin(math.pi / 4), math.cos(math.pi / 4), 0.0))
print("fixed-direction ramp at t=1:", np.round(evolve_commuting(sweep, ZERO, 1.0).vector, 12))

# %% [markdown]
# A rotating field needs time ordering. The integrator multiplies exact SU(2)
# steps evaluated at interval midpoints, so it is unitary at every step and
# second order in the step size.

# %%
cfg = RotatingXYField(1.0, 1.0)
exact = rotating_field_state(1.0, 1.0, 2 * math.pi)
num = evolve_ordered(cfg, ZERO, 0.0, 2 * math.pi)
print("fidelity error at 2048 steps:", 1 - abs(np.vdot(exact.vector, num.vector)) ** 2)

errors = []
for steps in (128, 256, 512, 1024):
    v, _ = ordered_raw(cfg, ZERO, 0.0, 2 * math.pi, steps)
    errors.append(np.linalg.norm(v - exact.vector))
print("error ratios per halving:", np.round(np.array(errors[:-1]) / errors[1:], 4))

# %% [markdown]
# Arbitrary fields can be given as callables. Sampling them along a uniform
# grid produces a trajectory with angles, Bloch vectors and energy spreads.

# %%
wobbly = CustomField(lambda t: (math.cos(t), 0.3, 0.5 * math.sin(2 * t)))
traj = trajectory(wobbly, ZERO, 0.0, 3.0, 7, options=IntegratorOptions(step_count=4096))
for s in traj.samples:
    print(f"t={s.t:.2f}  theta={s.angles.theta:.4f}  phi={s.angles.phi:+.4f}  dE={s.deltaE:.4f}")

"""
How much current does the coil need?
====================================

The gas sits at the centre of a toroidal coil, where B vanishes but the
vector potential does not. We compute the on-axis potential, the
contour estimate, and the current that makes the coupling ratio one.
"""

# %%
import numpy as np

from abspec import HCL, ToroidSpec, a0_gauge_independent, a_z_on_axis, required_current

coil = ToroidSpec(inner_radius=0.02, revolution_radius=0.06, n_loops=1000, current=1.0)
print(f"A_z(0) at 1 A         : {a_z_on_axis(coil):.4e} T*m")
print(f"contour estimate at 1 A: {a0_gauge_independent(coil):.4e} T*m")
print(f"ratio of the two       : {a_z_on_axis(coil) / a0_gauge_independent(coil):.12f} (pi)")

# %%
z = np.linspace(-0.3, 0.3, 7)
for zi, a in zip(z, a_z_on_axis(coil, z)):
    print(f"  z = {zi:+.2f} m  A_z = {a:.3e} T*m")

# %%
# Current per winding for coupling ratio 1 (using A_z at the centre).
current = required_current(coil, HCL, 1.0)
print(f"required current: {current:.4f} A  ({current / 0.2:.1f} x the 0.2 A estimate)")
for loops in (500, 1000, 5000):
    c = ToroidSpec(0.02, 0.06, loops)
    print(f"  {loops:>5} loops -> {required_current(c, HCL, 1.0):.4f} A")

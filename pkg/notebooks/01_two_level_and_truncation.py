"""
Two-level line shift and what happens with more levels
======================================================

A molecule lying along the vector potential sees the largest coupling.
Keeping only the two lowest oscillator states predicts the fundamental
line moves from w0 to 2 w0 sqrt(1/4 + r^2). Here we compare that with
larger truncations and with the exact spectrum of the untruncated
operator.
"""

# %%
import numpy as np

from abspec import (HCL, build_hamiltonian, coupling_from_ratio, displaced_spectrum_oracle,
                    eigenvalues, phase_reduce, two_level_energies)

r = 1.0
cp = coupling_from_ratio(r, HCL)
two = two_level_energies(cp, HCL)
print(f"alpha = {cp.alpha:.4f} eV, r = {cp.ratio_r}")
print(f"two-level: E- = {two.e_minus:.6f} eV, E+ = {two.e_plus:.6f} eV, "
      f"line at {two.transition_ratio:.6f} w0")

# %%
# The N-level matrices are tridiagonal; their imaginary off-diagonal
# phases can be removed by a diagonal unitary, so a real symmetric solver
# is enough.
print(f"{'N':>4} {'E0 [eV]':>14} {'nu = (E1-E0)/hw':>18}")
for n in (2, 3, 4, 8, 16, 32, 64):
    ev = eigenvalues(phase_reduce(build_hamiltonian(n, cp, HCL))).eigenvalues
    print(f"{n:>4} {ev[0]:>14.10f} {(ev[1] - ev[0]) / HCL.hbar_omega0:>18.12f}")

exact = displaced_spectrum_oracle(4, cp, HCL)
print("exact (completed square):", exact, "spacing", np.diff(exact) / HCL.hbar_omega0)

# %%
# The lowest level converges to hw(1/2 - r^2) and the spacing returns to
# hw: with all levels kept, the coupling only shifts the ladder rigidly.
# The broadening is therefore a property of the two-level truncation.

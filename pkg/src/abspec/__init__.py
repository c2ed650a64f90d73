"""Vibrational absorption of a diatomic molecule in a constant vector potential."""

from .coil import ToroidSpec, a0_gauge_independent, a_z_on_axis, required_current
from .constants import CONSTANTS, PhysicalConstants, energy_ev_from_joule
from .eigensolver import (ConvergenceError, EigenResult, SymmetricTridiagonal,
                          displaced_spectrum_oracle, eigenvalues,
                          oracle_charpoly_eigenvalues, phase_reduce)
from .molecule import HCL, MoleculeSpec, reduced_mass, reduced_rest_energy
from .oscillator import (CouplingParams, HermitianTridiagonal, TwoLevelResult,
                         build_hamiltonian, coupling_alpha, coupling_from_ratio,
                         two_level_energies)
from .spectrum import (OrientationEnsemble, Spectrum, analytic_two_level_density,
                       convergence_study, line_profile)

__version__ = "0.1.0"

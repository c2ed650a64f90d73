"""Physical constants and unit conventions.

Internal units: energies in eV, lengths in m, vector potentials in T*m,
currents in A, masses in unified atomic mass units (u).

Values are CODATA 2018 and are fixed here rather than taken from
``scipy.constants``, whose table changes between releases.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA 2018 constants in the units used throughout the package."""

    # C (exact)
    elementary_charge: float = 1.602176634e-19
    # m/s (exact)
    speed_of_light: float = 299792458.0
    # eV*s (exact, h/2pi/e)
    hbar: float = 6.582119569e-16
    # T*m/A
    vacuum_permeability: float = 1.25663706212e-6
    # eV per u
    atomic_mass_unit_energy: float = 931.49410242e6

    def __post_init__(self):
        for name, value in vars(self).items():
            if not value > 0:
                raise ValueError(f"{name} must be positive, got {value!r}")


CONSTANTS = PhysicalConstants()


def energy_ev_from_joule(energy, k=CONSTANTS):
    """Convert an energy in J to eV."""
    return energy / k.elementary_charge


def energy_joule_from_ev(energy, k=CONSTANTS):
    """Convert an energy in eV to J."""
    return energy * k.elementary_charge

"""Diatomic molecule description and reduced-mass quantities."""

import math
from dataclasses import dataclass

from .constants import CONSTANTS


@dataclass(frozen=True)
class MoleculeSpec:
    """A harmonic diatomic molecule.

    Parameters
    ----------
    mass_1, mass_2 : float
        Atomic masses in u.
    hbar_omega0 : float
        Vibrational quantum in eV.
    name : str, optional
        Label used in summaries.
    """

    mass_1: float
    mass_2: float
    hbar_omega0: float
    name: str = ""

    def __post_init__(self):
        for field in ("mass_1", "mass_2", "hbar_omega0"):
            value = getattr(self, field)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{field} must be positive and finite, got {value!r}")


# Standard atomic weight of H, and the 35Cl isotope mass.
HCL = MoleculeSpec(mass_1=1.00784, mass_2=34.96885, hbar_omega0=0.05, name="HCl")

PRESETS = {"HCl": HCL}


def preset(name):
    try:
        return PRESETS[name]
    except KeyError:
        raise ValueError(
            f"unknown molecule preset {name!r}; available: {sorted(PRESETS)}"
        ) from None


def reduced_mass(spec):
    """Reduced mass m1*m2/(m1+m2) in u."""
    m1, m2 = spec.mass_1, spec.mass_2
    if m1 <= 0 or m2 <= 0:
        raise ValueError("masses must be positive")
    return m1 * m2 / (m1 + m2)


def reduced_rest_energy(spec, k=CONSTANTS):
    """Rest energy of the reduced mass, mu*c^2, in eV."""
    return reduced_mass(spec) * k.atomic_mass_unit_energy

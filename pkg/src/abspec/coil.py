"""Toroidal coil: on-axis vector potential and the drive current needed.

On the symmetry axis of a thin torus (tube radius a << revolution radius
b) carrying ``n_loops * current`` ampere-turns, the Coulomb-gauge vector
potential points along the axis with magnitude

    A_z(z) = mu0/(4 pi) * pi a^2 b (N I) / (b^2 + z^2)^(3/2).

A contour estimate A0 = sigma B / L with sigma = pi a^2, L = 2 pi b and
the interior field B = mu0 N I / (2 pi b) is also provided. It is
smaller than A_z(0) by exactly a factor pi; both are kept as they are.
"""

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .constants import CONSTANTS
from .oscillator import ratio_per_a0

THIN_TORUS_WARN = 0.5


@dataclass(frozen=True)
class ToroidSpec:
    """Coil geometry (m) and drive current (A) per winding."""

    inner_radius: float
    revolution_radius: float
    n_loops: int = 1
    current: float = 0.0

    def __post_init__(self):
        a, b = self.inner_radius, self.revolution_radius
        if not (math.isfinite(a) and math.isfinite(b) and 0 < a < b):
            raise ValueError(f"need 0 < inner_radius < revolution_radius, got a={a!r}, b={b!r}")
        if int(self.n_loops) != self.n_loops or self.n_loops < 1:
            raise ValueError(f"n_loops must be a positive integer, got {self.n_loops!r}")
        if not math.isfinite(self.current):
            raise ValueError(f"current must be finite, got {self.current!r}")
        if a / b > THIN_TORUS_WARN:
            warnings.warn(f"a/b = {a / b:.3g} > {THIN_TORUS_WARN}: thin-torus formula is "
                          "outside its validity range", stacklevel=3)

    @property
    def ampere_turns(self):
        return self.n_loops * self.current


def a_z_on_axis(t, z=0.0, k=CONSTANTS):
    """Vector potential (T*m) at height ``z`` (m) on the torus axis.

    ``z`` may be an array.
    """
    a, b = t.inner_radius, t.revolution_radius
    z = np.asarray(z, dtype=float)
    value = (k.vacuum_permeability / (4.0 * math.pi) * math.pi * a * a * b
             * t.ampere_turns / (b * b + z * z) ** 1.5)
    return float(value) if value.ndim == 0 else value


def a0_gauge_independent(t, k=CONSTANTS):
    """Contour estimate sigma*B/L (T*m) of the vector potential at the centre."""
    a, b = t.inner_radius, t.revolution_radius
    sigma = math.pi * a * a
    perimeter = 2.0 * math.pi * b
    field = k.vacuum_permeability * t.ampere_turns / (2.0 * math.pi * b)
    return sigma * field / perimeter


def required_current(t, mol, target_ratio, k=CONSTANTS):
    """Current per winding (A) giving coupling ratio ``target_ratio`` at the centre.

    The chain current -> A_z(0) -> ratio is linear, so the answer is the
    target divided by the ratio produced by one ampere.
    """
    if not target_ratio > 0:
        raise ValueError(f"target_ratio must be positive, got {target_ratio!r}")
    unit = replace(t, current=1.0)
    return target_ratio / (a_z_on_axis(unit, 0.0, k) * ratio_per_a0(mol, k))


def coupling_ratio(t, mol, z=0.0, k=CONSTANTS):
    """Coupling ratio at cos(theta)=1 for a molecule at height ``z`` on the axis."""
    return a_z_on_axis(t, z, k) * ratio_per_a0(mol, k)

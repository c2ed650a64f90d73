"""Coupling strength and the truncated oscillator Hamiltonian.

With the vector potential along z and only its component along the
molecular axis entering the minimal coupling, the Hamiltonian in the
number basis is

    H = hw (a^dag a + 1/2) - i alpha (a^dag - a),
    alpha = e A0 c sqrt(hw / (2 mu c^2)) cos(theta),

a tridiagonal matrix with diagonal hw (n + 1/2) and entries +i alpha
sqrt(n+1) above / -i alpha sqrt(n+1) below the diagonal. The quadratic
A0^2 term of the minimal coupling is not part of this operator.
"""

import math
from dataclasses import dataclass

import numpy as np

from .constants import CONSTANTS
from .molecule import reduced_rest_energy


@dataclass(frozen=True)
class CouplingParams:
    """Coupling of one molecule orientation to the vector potential.

    ``a0`` is in T*m, ``alpha`` in eV; ``ratio_r`` is alpha / hbar_omega0.
    """

    a0: float
    cos_theta: float
    alpha: float
    ratio_r: float

    @property
    def phase(self):
        return -1 if self.alpha < 0 else 1


def ratio_per_a0(mol, k=CONSTANTS):
    """Coupling ratio produced by a unit vector potential (1 T*m) at cos(theta)=1.

    e*A0*c expressed in eV is numerically A0*c for A0 in T*m, so the ratio
    is c / sqrt(2 hbar_omega0 mu c^2).
    """
    return k.speed_of_light / math.sqrt(2.0 * mol.hbar_omega0 * reduced_rest_energy(mol, k))


def coupling_alpha(a0, cos_theta, mol, k=CONSTANTS):
    """Coupling parameters for vector potential ``a0`` (T*m) at angle cos_theta."""
    if not math.isfinite(a0):
        raise ValueError(f"a0 must be finite, got {a0!r}")
    if not abs(cos_theta) <= 1.0:
        raise ValueError(f"|cos_theta| must be <= 1, got {cos_theta!r}")
    ea0c = a0 * k.speed_of_light
    alpha = ea0c * math.sqrt(mol.hbar_omega0 / (2.0 * reduced_rest_energy(mol, k))) * cos_theta
    return CouplingParams(a0=a0, cos_theta=cos_theta, alpha=alpha,
                          ratio_r=alpha / mol.hbar_omega0)


def a0_for_ratio(ratio, mol, k=CONSTANTS):
    """Vector potential (T*m) giving coupling ratio ``ratio`` at cos(theta)=1."""
    return ratio / ratio_per_a0(mol, k)


def coupling_from_ratio(ratio, mol, cos_theta=1.0, k=CONSTANTS):
    """Coupling parameters with ``ratio`` fixed exactly at cos(theta)=1.

    The stored alpha is ``ratio * cos_theta * hbar_omega0`` so that the
    dimensionless ratio is not perturbed by the constants round trip.
    """
    if not abs(cos_theta) <= 1.0:
        raise ValueError(f"|cos_theta| must be <= 1, got {cos_theta!r}")
    r = ratio * cos_theta
    return CouplingParams(a0=a0_for_ratio(ratio, mol, k), cos_theta=cos_theta,
                          alpha=r * mol.hbar_omega0, ratio_r=r)


@dataclass(frozen=True, eq=False)
class HermitianTridiagonal:
    """Hermitian tridiagonal matrix with purely imaginary off-diagonal.

    Element (n, n+1) is ``+1j * phase * offmag[n]`` and element (n+1, n)
    its conjugate. ``offmag`` is non-negative; the sign of alpha lives in
    ``phase`` and does not affect the spectrum.
    """

    diag: np.ndarray
    offmag: np.ndarray
    phase: int = 1

    def __post_init__(self):
        if self.diag.ndim != 1 or len(self.diag) < 1:
            raise ValueError("diag must be a non-empty 1-D array")
        if self.offmag.shape != (len(self.diag) - 1,):
            raise ValueError("offmag must have length dim - 1")
        if np.any(self.offmag < 0):
            raise ValueError("offmag must be non-negative")
        if self.phase not in (1, -1):
            raise ValueError("phase must be +1 or -1")

    @property
    def dim(self):
        return len(self.diag)

    def to_dense(self):
        """Dense complex matrix, for checks and small-scale inspection."""
        h = np.diag(self.diag.astype(complex))
        upper = 1j * self.phase * self.offmag
        idx = np.arange(self.dim - 1)
        h[idx, idx + 1] = upper
        h[idx + 1, idx] = np.conj(upper)
        return h


def build_hamiltonian(n_levels, cp, mol):
    """Hamiltonian (eV) truncated to the lowest ``n_levels`` oscillator states."""
    if n_levels < 1:
        raise ValueError(f"n_levels must be >= 1, got {n_levels!r}")
    n = np.arange(n_levels, dtype=float)
    diag = mol.hbar_omega0 * (n + 0.5)
    offmag = abs(cp.alpha) * np.sqrt(n[1:])
    return HermitianTridiagonal(diag=diag, offmag=offmag, phase=cp.phase)


@dataclass(frozen=True)
class TwoLevelResult:
    e_minus: float
    e_plus: float
    transition_ratio: float


def two_level_energies(cp, mol):
    """Closed-form eigenvalues of the two-level truncation.

    E_pm = hw [1 +/- sqrt(1/4 + r^2)], and the 0 -> 1 line sits at
    ratio 2 sqrt(1/4 + r^2) of the free oscillator frequency.
    """
    root = math.sqrt(0.25 + cp.ratio_r ** 2)
    hw = mol.hbar_omega0
    return TwoLevelResult(e_minus=hw * (1.0 - root), e_plus=hw * (1.0 + root),
                          transition_ratio=2.0 * root)

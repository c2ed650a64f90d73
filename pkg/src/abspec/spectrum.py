"""Orientation-averaged profile of the fundamental 0 -> 1 absorption line.

A molecule whose axis makes angle theta with the vector potential sees
coupling ratio r(u) = r0 * u with u = cos(theta). For an isotropic gas u
is uniform on [-1, 1]. Each orientation absorbs at frequency ratio
nu(u) = (E1 - E0) / hbar_omega0, and the profile is the distribution of
nu over the ensemble, binned on a uniform grid.

In the two-level truncation nu(u) = 2 sqrt(1/4 + r0^2 u^2), so the band
runs from nu = 1 (u = 0) to 2 sqrt(1/4 + r0^2) (u = +/-1) with density
nu / (2 r0 sqrt(nu^2 - 1)).
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_legendre

from .constants import CONSTANTS
from .eigensolver import DEFAULT_TOL, SymmetricTridiagonal, eigenvalues
from .oscillator import ratio_per_a0

TWO_LEVEL = "two_level"
FULL_N_LEVEL = "full_n_level"
MODES = (TWO_LEVEL, FULL_N_LEVEL)
SCHEMES = ("grid", "gauss_legendre")


@dataclass(frozen=True)
class OrientationEnsemble:
    """Deterministic sampling of u = cos(theta) over [-1, 1].

    ``"grid"`` places ``n_samples`` equally weighted nodes on a uniform
    grid including both ends; ``"gauss_legendre"`` uses Gauss-Legendre
    nodes and weights. Each node owns the cell of u between the midpoints
    to its neighbours.

    With ``half=True`` only the nodes with u >= 0 are kept and their
    weights doubled (a node at u = 0 keeps its weight), with the cell
    boundary at u = 0 in place of the mirrored neighbour. For a profile
    even in u this gives the same spectrum at half the cost.
    """

    n_samples: int = 4096
    scheme: str = "grid"
    half: bool = False

    def __post_init__(self):
        if self.n_samples < 2:
            raise ValueError(f"n_samples must be >= 2, got {self.n_samples!r}")
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")

    def nodes(self):
        """Nodes u, weights summing to one, and the n+1 cell boundaries."""
        if self.scheme == "grid":
            u = np.linspace(-1.0, 1.0, self.n_samples)
            u = 0.5 * (u - u[::-1])  # exact mirror symmetry
            w = np.full(self.n_samples, 1.0 / self.n_samples)
        else:
            u, w = roots_legendre(self.n_samples)
            w = w / 2.0
        bounds = np.concatenate(([-1.0], 0.5 * (u[:-1] + u[1:]), [1.0]))
        if self.half:
            keep = u >= 0
            first = int(np.argmax(keep))
            u = u[keep]
            w = np.where(u == 0.0, w[keep], 2.0 * w[keep])
            bounds = bounds[first:].copy()
            bounds[0] = 0.0
        return u, w, bounds


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Binned line profile.

    ``nu`` holds bin centres (frequency ratio to the free oscillator line),
    ``weight`` the normalized bin masses, ``edges`` the bin boundaries.
    A line of zero width is a single bin at its position.
    """

    mode: str
    n_levels: int
    nu: np.ndarray
    weight: np.ndarray
    edges: np.ndarray
    nu_min: float
    nu_max: float

    @property
    def bins(self):
        return list(zip(self.nu.tolist(), self.weight.tolist()))

    def to_csv(self):
        lines = ["nu,weight"]
        lines += [f"{float(n)!r},{float(w)!r}" for n, w in zip(self.nu, self.weight)]
        return "\n".join(lines) + "\n"


def transition_ratio(ratio, n_levels=2, tol=DEFAULT_TOL):
    """Frequency ratio of the 0 -> 1 line of the ``n_levels`` truncation.

    Solved in units of hbar_omega0, so an uncoupled oscillator gives
    exactly 1.
    """
    if n_levels < 2:
        raise ValueError(f"n_levels must be >= 2, got {n_levels!r}")
    n = np.arange(n_levels, dtype=float)
    t = SymmetricTridiagonal(diag=n + 0.5, offdiag=abs(ratio) * np.sqrt(n[1:]))
    ev = eigenvalues(t, tol=tol).eigenvalues
    return float(ev[1] - ev[0])


def _ratios_serial(args):
    ratios, n_levels, tol = args
    return [transition_ratio(r, n_levels, tol) for r in ratios]


def transition_ratios(r0, u, mode=TWO_LEVEL, n_levels=2, tol=DEFAULT_TOL, workers=None):
    """nu(u) for every orientation node.

    Depends on u only through |u|, which is exploited by solving once per
    distinct |u|. ``workers`` > 1 spreads full-truncation solves over
    processes; the result does not depend on it.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    u = np.asarray(u, dtype=float)
    if mode == TWO_LEVEL:
        return 2.0 * np.sqrt(0.25 + (r0 * np.abs(u)) ** 2)
    absu, inverse = np.unique(np.abs(u), return_inverse=True)
    ratios = (r0 * absu).tolist()
    if workers and workers > 1 and len(ratios) > workers:
        chunks = [ratios[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_ratios_serial, [(c, n_levels, tol) for c in chunks]))
        values = np.empty(len(ratios))
        for i, part in enumerate(parts):
            values[i::workers] = part
    else:
        values = np.array(_ratios_serial((ratios, n_levels, tol)))
    return values[inverse.ravel()]


def bin_profile(nu, weights, n_bins, nu_min, nu_max, nu_left=None, nu_right=None,
                frac_left=None):
    """Accumulate node weights into ``n_bins`` uniform bins on [nu_min, nu_max].

    Without cell information each node's weight lands in the bin holding
    ``nu``. Given the line positions ``nu_left`` / ``nu_right`` at the
    node's cell boundaries, the weight is instead spread uniformly over
    [nu_left, nu] (fraction ``frac_left``) and [nu, nu_right], which
    removes the node-counting noise of a point histogram. Returns bin
    centres, normalized masses and edges.
    """
    if n_bins < 1:
        raise ValueError(f"n_bins must be >= 1, got {n_bins!r}")
    nu = np.asarray(nu, dtype=float)
    weights = np.asarray(weights, dtype=float)
    total = math.fsum(weights)
    if not total > 0:
        raise ValueError("total weight must be positive")
    width = nu_max - nu_min
    if width <= 0:
        return np.array([nu_min]), np.array([1.0]), np.array([nu_min, nu_max])
    edges = np.linspace(nu_min, nu_max, n_bins + 1)
    x = (nu - nu_min) / width * n_bins
    if nu_left is None:
        idx = np.clip(np.floor(x).astype(int), 0, n_bins - 1)
        mass = np.bincount(idx, weights=weights, minlength=n_bins)
    else:
        if frac_left is None:
            frac_left = np.full_like(weights, 0.5)
        xl = (np.asarray(nu_left, dtype=float) - nu_min) / width * n_bins
        xr = (np.asarray(nu_right, dtype=float) - nu_min) / width * n_bins
        mass = (_spread(x, xl, weights * frac_left, n_bins)
                + _spread(x, xr, weights * (1.0 - frac_left), n_bins))
    centres = 0.5 * (edges[:-1] + edges[1:])
    return centres, mass / total, edges


_CHUNK = 4096


def _spread(xa, xb, mass, n_bins):
    """Bin masses of segments spread uniformly over [xa, xb] in bin units."""
    lo = np.clip(np.minimum(xa, xb), 0.0, n_bins)
    hi = np.clip(np.maximum(xa, xb), 0.0, n_bins)
    grid = np.arange(n_bins + 1, dtype=float)
    out = np.zeros(n_bins)
    for start in range(0, len(lo), _CHUNK):
        a = lo[start:start + _CHUNK, None]
        b = hi[start:start + _CHUNK, None]
        m = mass[start:start + _CHUNK, None]
        span = b - a
        point = span <= 0
        # cumulative fraction of each segment's mass below each edge
        cdf = np.where(point, (grid > a).astype(float),
                       np.clip((grid - a) / np.where(point, 1.0, span), 0.0, 1.0))
        cdf[:, 0] = 0.0
        cdf[:, -1] = 1.0
        out += np.sum(m * np.diff(cdf, axis=1), axis=0)
    return out


def line_profile(mol, a0, ens=OrientationEnsemble(), mode=TWO_LEVEL, n_bins=256,
                 n_levels=2, dipole_weighting=False, tol=DEFAULT_TOL, workers=None,
                 k=CONSTANTS):
    """Orientation-averaged profile of the fundamental line.

    Parameters
    ----------
    mol : MoleculeSpec
    a0 : float
        Vector potential magnitude in T*m, >= 0.
    ens : OrientationEnsemble
    mode : {"two_level", "full_n_level"}
    n_bins : int
    n_levels : int
        Truncation size for ``"full_n_level"``; ignored for two-level.
    dipole_weighting : bool
        Weight each orientation by cos^2(theta) instead of equally.

    Returns
    -------
    Spectrum
    """
    if not (math.isfinite(a0) and a0 >= 0):
        raise ValueError(f"a0 must be finite and non-negative, got {a0!r}")
    if mode == TWO_LEVEL:
        n_levels = 2
    r0 = a0 * ratio_per_a0(mol, k)
    u, w, bounds = ens.nodes()
    if dipole_weighting:
        w = w * u ** 2
    # nodes, cell boundaries and the extreme orientations in one solve pass
    points = np.concatenate((u, bounds, [0.0, 1.0]))
    values = transition_ratios(r0, points, mode, n_levels, tol, workers)
    nu = values[:len(u)]
    nu_bounds = values[len(u):len(u) + len(bounds)]
    ends = values[-2:]
    nu_min = float(min(ends[0], nu_bounds.min(), nu.min()))
    nu_max = float(max(ends[1], nu_bounds.max(), nu.max()))
    cell = bounds[1:] - bounds[:-1]
    frac_left = (u - bounds[:-1]) / cell
    centres, mass, edges = bin_profile(nu, w, n_bins, nu_min, nu_max,
                                       nu_left=nu_bounds[:-1], nu_right=nu_bounds[1:],
                                       frac_left=frac_left)
    return Spectrum(mode=mode, n_levels=n_levels, nu=centres, weight=mass, edges=edges,
                    nu_min=nu_min, nu_max=nu_max)


def analytic_two_level_density(nu, r0):
    """Density of the two-level transition ratio for an isotropic gas.

    g(nu) = nu / (2 r0 sqrt(nu^2 - 1)) on (1, 2 sqrt(1/4 + r0^2)]; it
    integrates to one and diverges integrably at nu -> 1.
    """
    if not r0 > 0:
        raise ValueError(f"r0 must be positive, got {r0!r}")
    nu = np.asarray(nu, dtype=float)
    top = 2.0 * math.sqrt(0.25 + r0 * r0)
    if np.any(nu <= 1.0) or np.any(nu > top):
        raise ValueError(f"nu must lie in (1, {top!r}]")
    out = nu / (2.0 * r0 * np.sqrt(nu * nu - 1.0))
    return float(out) if out.ndim == 0 else out


def analytic_two_level_cdf(nu, r0):
    """Fraction of molecules absorbing below ``nu``: sqrt(nu^2 - 1) / (2 r0)."""
    nu = np.clip(np.asarray(nu, dtype=float), 1.0, 2.0 * math.sqrt(0.25 + r0 * r0))
    return np.sqrt(nu * nu - 1.0) / (2.0 * r0)


def convergence_study(mol, r0, n_levels_list, tol=DEFAULT_TOL):
    """Line position at cos(theta)=1 for each truncation size.

    Returns a list of ``(n_levels, nu)`` sorted by ``n_levels``. The
    molecule fixes nothing here beyond the energy scale, since nu is a
    ratio to hbar_omega0; it is accepted for symmetry with the other
    entry points.
    """
    sizes = sorted(int(n) for n in n_levels_list)
    if any(n < 2 for n in sizes):
        raise ValueError("every n_levels must be >= 2")
    return [(n, transition_ratio(r0, n, tol)) for n in sizes]

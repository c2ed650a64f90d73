"""Eigenvalues of the truncated Hamiltonian.

The oscillator matrix has off-diagonal elements ``+i b_n`` above and
``-i b_n`` below the diagonal. Conjugating by U = diag(i^n) maps the
(n, n+1) element to (U^dag H U)_{n,n+1} = i^-n (i b_n) i^(n+1) = -b_n,
a real symmetric tridiagonal matrix with the same spectrum. Flipping the
sign of every off-diagonal element is a further similarity by
diag((-1)^n), so ``offdiag = offmag`` may be used directly.

Production eigenvalues come from implicit QL with Wilkinson shifts.
A Sturm-count bisection solver is kept as an independent check, along
with the exact spectrum of the untruncated operator.
"""

import math
from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-12
MAX_ITERATIONS = 64
ORACLE_MAX_DIM = 8
ORACLE_RTOL = 1e-13


class ConvergenceError(RuntimeError):
    """QL iteration exceeded its per-eigenvalue iteration cap."""


@dataclass(frozen=True, eq=False)
class SymmetricTridiagonal:
    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "diag", np.asarray(self.diag, dtype=float))
        object.__setattr__(self, "offdiag", np.asarray(self.offdiag, dtype=float))
        if self.diag.ndim != 1 or len(self.diag) < 1:
            raise ValueError("diag must be a non-empty 1-D array")
        if self.offdiag.shape != (len(self.diag) - 1,):
            raise ValueError("offdiag must have length dim - 1")

    @property
    def dim(self):
        return len(self.diag)

    def norm1(self):
        """Matrix 1-norm (max absolute column sum)."""
        col = np.abs(self.diag).copy()
        col[:-1] += np.abs(self.offdiag)
        col[1:] += np.abs(self.offdiag)
        return float(col.max())

    def to_dense(self):
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


@dataclass(frozen=True, eq=False)
class EigenResult:
    """Sorted eigenvalues with solver diagnostics.

    ``iterations`` is the total QL sweep count (bisection steps for the
    oracle); ``residual_bound`` bounds the perturbation introduced by
    deflation, in the units of the matrix.
    """

    eigenvalues: np.ndarray
    iterations: int
    residual_bound: float


def phase_reduce(h):
    """Real symmetric tridiagonal form of a :class:`HermitianTridiagonal`."""
    return SymmetricTridiagonal(diag=h.diag.copy(), offdiag=h.offmag.copy())


def eigenvalues(t, tol=DEFAULT_TOL, max_iterations=MAX_ITERATIONS):
    """All eigenvalues of a symmetric tridiagonal matrix by implicit QL.

    Parameters
    ----------
    t : SymmetricTridiagonal
    tol : float
        Relative deflation threshold: ``offdiag[n]`` is dropped once
        ``|offdiag[n]| <= tol * (|diag[n]| + |diag[n+1]|)``.
    max_iterations : int
        Cap on QL sweeps spent on any single eigenvalue.

    Returns
    -------
    EigenResult
        Eigenvalues sorted ascending.

    Raises
    ------
    ConvergenceError
        If an eigenvalue needs more than ``max_iterations`` sweeps.
    """
    if not 0 < tol <= 1e-6:
        raise ValueError(f"tol must lie in (0, 1e-6], got {tol!r}")
    n = t.dim
    d = [float(x) for x in t.diag]
    if n == 1:
        return EigenResult(np.array(d), 0, 0.0)
    e = [float(x) for x in t.offdiag] + [0.0]
    # fallback scale for rows whose diagonal is exactly zero
    floor = tol * t.norm1()
    dropped = 0.0
    total = 0

    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= tol * dd or abs(e[m]) <= floor * 1e-3:
                    break
                m += 1
            if m < n - 1:
                dropped = max(dropped, abs(e[m]))
            if m == l:
                break
            it += 1
            if it > max_iterations:
                raise ConvergenceError(
                    f"eigenvalue {l} not converged after {max_iterations} iterations")
            # Wilkinson shift from the leading 2x2 block
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
        total += it

    return EigenResult(np.sort(np.array(d)), total, 2.0 * dropped)


def _gershgorin(t):
    d, e = t.diag, np.abs(t.offdiag)
    radius = np.zeros_like(d)
    radius[:-1] += e
    radius[1:] += e
    return float(np.min(d - radius)), float(np.max(d + radius))


def _count_below(d, e2, x):
    """Number of eigenvalues strictly below ``x`` (Sturm sign count).

    Uses the ratio form q_k = p_k / p_{k-1} of the three-term recurrence
    p_k(x) = (d_k - x) p_{k-1} - e_{k-1}^2 p_{k-2}.
    """
    count = 0
    q = d[0] - x
    if q < 0:
        count += 1
    for k in range(1, len(d)):
        if q == 0.0:
            q = 1e-300
        q = d[k] - x - e2[k - 1] / q
        if q < 0:
            count += 1
    return count


def oracle_charpoly_eigenvalues(t, rtol=ORACLE_RTOL):
    """Eigenvalues by Sturm-sequence bisection; test-scale matrices only."""
    n = t.dim
    if n > ORACLE_MAX_DIM:
        raise ValueError(f"oracle supports dim <= {ORACLE_MAX_DIM}, got {n}")
    d = [float(x) for x in t.diag]
    e2 = [float(x) ** 2 for x in t.offdiag]
    lo0, hi0 = _gershgorin(t)
    span = max(hi0 - lo0, abs(lo0), abs(hi0), 1e-300)
    lo0 -= 1e-12 * span
    hi0 += 1e-12 * span
    values = []
    steps = 0
    for k in range(n):
        # the (k+1)-th smallest eigenvalue is the smallest x with count(x) > k
        lo, hi = lo0, hi0
        while True:
            mid = 0.5 * (lo + hi)
            if not lo < mid < hi or hi - lo <= rtol * max(abs(lo), abs(hi)):
                break
            steps += 1
            if _count_below(d, e2, mid) > k:
                hi = mid
            else:
                lo = mid
        values.append(0.5 * (lo + hi))
    return EigenResult(np.array(values), steps, 0.0)


def displaced_spectrum_oracle(n_levels, cp, mol):
    """Exact spectrum (eV) of the untruncated coupled oscillator.

    The linear momentum term is removed by completing the square, which
    shifts every level by -alpha^2/hw and leaves the spacing at hw:
    E_n = hw (n + 1/2 - r^2).
    """
    if n_levels < 1:
        raise ValueError(f"n_levels must be >= 1, got {n_levels!r}")
    n = np.arange(n_levels, dtype=float)
    return mol.hbar_omega0 * (n + 0.5 - cp.ratio_r ** 2)

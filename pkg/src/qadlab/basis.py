"""1D quantum eigenproblem of H0 = p^2/2 + x^4/4 at dimensionless hbar0.

The solver uses a sine-basis spectral grid (particle-in-a-box discrete
variable representation): the kinetic operator is exact for every mode the
box supports, so eigenpair accuracy is limited only by box leakage, not by
a finite-difference stencil order.  The reflection symmetry of the
potential splits the grid into even/odd blocks of half size, which are
diagonalized independently and merged by energy.

Grid sizing policy: the classical turning point of the highest retained
level sits at <= 70% of the half-box, and the grid step resolves the local
de Broglie wavelength at n_max with at least `points_per_wavelength`
points (default 20).
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .constants import QuarticConstants, classical_constants

__all__ = ["GridPolicy", "OscillatorBasis", "solve_quartic_eigen", "BasisTruncationError"]


class BasisTruncationError(RuntimeError):
    """Raised when retained levels are not converged on the chosen grid."""


@dataclass(frozen=True)
class GridPolicy:
    """Discretization policy for the quartic eigensolver."""

    points_per_wavelength: float = 20.0
    turning_point_fraction: float = 0.70
    extra_levels: int = 8  # solved beyond n_max to guard the truncation check


@dataclass
class OscillatorBasis:
    """Eigenpairs and dipole matrix elements of the 1D quartic oscillator.

    Attributes
    ----------
    hbar0 : float
        Dimensionless Planck constant.
    n_max : int
        Highest retained level index; levels 0..n_max inclusive.
    x_grid : ndarray
        Symmetric coordinate grid (interior points of the box).
    energies : ndarray, shape (n_max+1,)
        Strictly increasing eigenvalues.
    wavefunctions : ndarray, shape (n_max+1, len(x_grid))
        Grid-orthonormal eigenvectors (sum psi^2 = 1); continuum
        normalization is psi/sqrt(dx).
    x_elements : ndarray, shape (n_max+1, n_max+1)
        Symmetric dipole table <n|x|n'>; same-parity entries vanish.
    """

    hbar0: float
    n_max: int
    x_grid: np.ndarray
    dx: float
    energies: np.ndarray
    wavefunctions: np.ndarray
    x_elements: np.ndarray
    eig_residual: float
    grid_policy: GridPolicy = field(default_factory=GridPolicy)
    constants: QuarticConstants = field(default_factory=classical_constants)

    def frequency(self, n: int) -> float:
        """Level frequency omega_n = (E_{n+1} - E_{n-1}) / (2 hbar0)."""
        if not 1 <= n <= self.n_max - 1:
            raise IndexError(f"frequency needs neighbors of n={n} inside 0..{self.n_max}")
        return (self.energies[n + 1] - self.energies[n - 1]) / (2.0 * self.hbar0)

    def second_difference(self, n: int) -> float:
        """E_{n+1} - 2 E_n + E_{n-1}, the local spectrum curvature."""
        e = self.energies
        return e[n + 1] - 2.0 * e[n] + e[n - 1]

    def momentum_elements(self, rows: np.ndarray | None = None) -> np.ndarray:
        """Momentum table p_{n,n'} = i (E_n - E_{n'}) x_{n,n'} / hbar0.

        Built from the same eigenbasis via the Heisenberg equation of
        motion; returns the full complex table (or selected rows).
        """
        e = self.energies
        x = self.x_elements
        if rows is None:
            return 1j * (e[:, None] - e[None, :]) * x / self.hbar0
        return 1j * (e[rows][:, None] - e[None, :]) * x[rows] / self.hbar0

    def content_hash(self) -> str:
        h = hashlib.sha256()
        h.update(np.ascontiguousarray(self.energies).tobytes())
        h.update(np.ascontiguousarray(self.x_elements).tobytes())
        h.update(json.dumps([self.hbar0, self.n_max, len(self.x_grid)]).encode())
        return h.hexdigest()

    def export_csv(self, out_dir, band: int = 9) -> dict:
        """Dump (n, E_n) and the |n-n'| <= band dipole strip with a JSON header.

        Returns the header dict (also written to basis_meta.json).
        """
        from pathlib import Path

        from .io.csvio import write_csv

        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        write_csv(out / "basis_levels.csv", ["n", "E"],
                  ((n, self.energies[n]) for n in range(self.n_max + 1)))
        rows = []
        for n in range(self.n_max + 1):
            for nn in range(n + 1, min(n + band, self.n_max) + 1):
                rows.append((n, nn, self.x_elements[n, nn]))
        write_csv(out / "basis_dipole_band.csv", ["n", "n_prime", "x"], rows)
        header = {
            "hbar0": self.hbar0,
            "n_max": self.n_max,
            "grid_points": int(len(self.x_grid)),
            "grid_step": self.dx,
            "half_box": float(-self.x_grid[0]),
            "points_per_wavelength": self.grid_policy.points_per_wavelength,
            "band": band,
            "content_hash": self.content_hash(),
        }
        (out / "basis_meta.json").write_text(json.dumps(header, indent=2, sort_keys=True))
        return header


def _box_kinetic_block(idx_row: np.ndarray, idx_col: np.ndarray, n_grid: int,
                       box_len: float, hbar0: float) -> np.ndarray:
    """Exact sine-basis kinetic matrix elements T_{ij} on box grid points.

    Closed form of U diag(hbar0^2 k_j^2 / 2) U^T where U is the type-I
    discrete sine transform; i, j are 1-based interior indices.
    """
    i = idx_row[:, None].astype(np.float64)
    j = idx_col[None, :].astype(np.float64)
    pref = 0.5 * hbar0 * hbar0 * (math.pi / box_len) ** 2 * 0.5
    sign = np.where((idx_row[:, None] - idx_col[None, :]) % 2 == 0, 1.0, -1.0)
    with np.errstate(divide="ignore"):
        off = sign * (
            1.0 / np.sin(math.pi * (i - j) / (2 * n_grid)) ** 2
            - 1.0 / np.sin(math.pi * (i + j) / (2 * n_grid)) ** 2
        )
    diag_mask = idx_row[:, None] == idx_col[None, :]
    diag_val = (2.0 * n_grid * n_grid + 1.0) / 3.0 - 1.0 / np.sin(math.pi * i / n_grid) ** 2
    return pref * np.where(diag_mask, diag_val, off)


def _fix_sign(psi: np.ndarray, threshold: float = 1e-6) -> np.ndarray:
    """Deterministic sign: first coordinate (from the left) where the
    wavefunction exceeds threshold * max is made positive."""
    cut = threshold * np.max(np.abs(psi))
    j = int(np.argmax(np.abs(psi) > cut))
    if psi[j] < 0:
        return -psi
    return psi


def solve_quartic_eigen(hbar0: float, n_max: int,
                        grid_policy: GridPolicy | None = None) -> OscillatorBasis:
    """Solve H0 = p^2/2 + x^4/4 for levels 0..n_max at Planck constant hbar0.

    Parity blocks are diagonalized separately and merged by energy; the
    result carries energies, grid wavefunctions and the full dipole table.

    Raises
    ------
    BasisTruncationError
        If the top retained levels fail the turning-point or residual
        convergence checks, naming the first bad index.
    """
    if hbar0 <= 0:
        raise ValueError(f"hbar0 must be positive, got {hbar0}")
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    policy = grid_policy or GridPolicy()
    consts = classical_constants()

    n_solve = n_max + policy.extra_levels
    # WKB sizing at the top solved level
    e_top = consts.A * (hbar0 * (n_solve + 0.5)) ** (4.0 / 3.0)
    x_turn = (4.0 * e_top) ** 0.25
    half_box = x_turn / policy.turning_point_fraction
    p_top = math.sqrt(2.0 * e_top)
    lam_min = 2.0 * math.pi * hbar0 / p_top
    dx_target = lam_min / policy.points_per_wavelength
    n_grid = int(math.ceil(2.0 * half_box / dx_target))
    n_grid += n_grid % 2  # even, so x=0 is a grid point
    box_len = 2.0 * half_box
    h = box_len / n_grid
    # interior indices 1..n_grid-1; physical x = i*h - half_box
    x_all = np.arange(1, n_grid) * h - half_box
    v_all = 0.25 * x_all**4

    c = n_grid // 2  # index of x = 0
    lo = np.arange(1, c)          # strictly left of center
    mirror = n_grid - lo          # reflected partners

    def block(parity: str):
        if parity == "even":
            idx = np.concatenate([lo, [c]])
            t = _box_kinetic_block(idx, idx, n_grid, box_len, hbar0) \
                + _box_kinetic_block(idx, n_grid - idx, n_grid, box_len, hbar0)
            # center row/col normalization: basis vector e_c is not doubled
            t[-1, :] /= math.sqrt(2.0)
            t[:, -1] /= math.sqrt(2.0)
            t[-1, -1] = _box_kinetic_block(np.array([c]), np.array([c]),
                                           n_grid, box_len, hbar0)[0, 0]
        else:
            idx = lo
            t = _box_kinetic_block(idx, idx, n_grid, box_len, hbar0) \
                - _box_kinetic_block(idx, n_grid - idx, n_grid, box_len, hbar0)
        hmat = t + np.diag(v_all[idx - 1])
        n_want = n_solve // 2 + 2
        vals, vecs = scipy.linalg.eigh(hmat, subset_by_index=(0, min(n_want, len(idx) - 1)))
        # residuals of the block eigenproblem
        res = np.max(np.abs(hmat @ vecs - vecs * vals[None, :]))
        return vals, vecs, res, idx

    ev_e, vc_e, res_e, idx_e = block("even")
    ev_o, vc_o, res_o, idx_o = block("odd")

    # merge by energy; parity alternates for a symmetric single well
    n_keep = n_solve + 1
    energies = np.empty(n_keep)
    psis = np.zeros((n_keep, n_grid - 1))
    half = np.s_[: c - 1]
    for n in range(n_keep):
        k = n // 2
        if n % 2 == 0:
            energies[n] = ev_e[k]
            v = vc_e[:, k]
            full = np.zeros(n_grid - 1)
            full[half] = v[:-1] / math.sqrt(2.0)
            full[c - 1] = v[-1]
            full[n_grid - lo - 1] = v[:-1] / math.sqrt(2.0)
        else:
            energies[n] = ev_o[k]
            v = vc_o[:, k]
            full = np.zeros(n_grid - 1)
            full[half] = v / math.sqrt(2.0)
            full[n_grid - lo - 1] = -v / math.sqrt(2.0)
        psis[n] = _fix_sign(full)

    order = np.argsort(energies, kind="stable")
    if not np.array_equal(order, np.arange(n_keep)):
        energies = energies[order]
        psis = psis[order]

    # convergence guards on the retained window 0..n_max
    for n in range(n_max + 1):
        xt = (4.0 * energies[n]) ** 0.25
        if xt > 1.02 * policy.turning_point_fraction * half_box:
            raise BasisTruncationError(
                f"level {n} has turning point {xt:.4g} beyond "
                f"{policy.turning_point_fraction:.0%} of the half-box {half_box:.4g}")
    if np.any(np.diff(energies[: n_max + 1]) <= 0):
        bad = int(np.argmax(np.diff(energies[: n_max + 1]) <= 0))
        raise BasisTruncationError(f"energies not strictly increasing at n={bad}")

    psis = psis[: n_max + 1]
    energies = energies[: n_max + 1]
    x_mat = (psis * x_all[None, :]) @ psis.T
    x_mat = 0.5 * (x_mat + x_mat.T)

    basis = OscillatorBasis(
        hbar0=hbar0,
        n_max=n_max,
        x_grid=x_all,
        dx=h,
        energies=energies,
        wavefunctions=psis,
        x_elements=x_mat,
        eig_residual=max(res_e, res_o),
        grid_policy=policy,
        constants=consts,
    )
    return basis


def eigen_residuals(basis: OscillatorBasis) -> np.ndarray:
    """||H0 psi_n - E_n psi_n|| for every retained level, on the solver grid.

    Reconstructs the full-grid Hamiltonian action blockwise to avoid
    materializing the dense operator.
    """
    n_grid = len(basis.x_grid) + 1
    box_len = basis.dx * n_grid
    idx = np.arange(1, n_grid)
    v = 0.25 * basis.x_grid**4
    # apply T in chunks of rows
    out = np.zeros_like(basis.wavefunctions)
    chunk = 512
    psi_t = basis.wavefunctions.T  # (n_grid-1, n_levels)
    for start in range(0, n_grid - 1, chunk):
        rows = idx[start : start + chunk]
        t_rows = _box_kinetic_block(rows, idx, n_grid, box_len, basis.hbar0)
        out[:, start : start + len(rows)] = (t_rows @ psi_t).T
    out += basis.wavefunctions * v[None, :]
    out -= basis.wavefunctions * basis.energies[:, None]
    return np.linalg.norm(out, axis=1)

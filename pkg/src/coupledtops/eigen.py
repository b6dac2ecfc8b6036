"""Eigenvalues near E=0, mean level spacing, unfolding, mirror checks.

Per-spectrum protocol: take the M eigenvalues of a reduced block closest
to zero (M = 61 for odd block dimension, 60 for even, capped at the
dimension), estimate the mean level spacing from the window width,
remove the symmetry-protected zero modes, and express the remaining
positive eigenvalues in units of the mean spacing.

Two solver paths are provided: dense full diagonalization below
``dense_threshold`` and shift-invert Lanczos at sigma=0 above it.  The
dense path doubles as the ground truth the iterative path is validated
against.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from . import model
from .model import BlockLabel, ModelParams
from .spinops import TwoJ


class ConvergenceFailure(RuntimeError):
    """The iterative eigensolver did not converge within its iteration budget."""


class ZeroModeMismatch(ValueError):
    """Zero-mode count in the window differs from the block's topological index."""


@dataclass(frozen=True)
class SolverConfig:
    """Eigensolver policy.

    method: "auto" picks dense below dense_threshold, shift-invert above;
    "dense" and "shift-invert" force a path.  If the sigma=0 factorization
    hits an exactly singular matrix (a true zero mode), the shift is
    retried at reshift_scale * max|H| before giving up.
    """

    method: str = "auto"
    dense_threshold: int = 4096
    sigma: float = 0.0
    reshift_scale: float = 1e-8
    tol: float = 0.0
    maxiter: Optional[int] = None

    def __post_init__(self):
        if self.method not in ("auto", "dense", "shift-invert"):
            raise ValueError(f"unknown solver method {self.method!r}")


DEFAULT_SOLVER = SolverConfig()


def default_m(block_dim: int) -> int:
    """Window size: 61 for odd block dimension, 60 for even, capped at the dimension."""
    if block_dim < 1:
        return 0
    m = 61 if block_dim % 2 else 60
    return min(m, block_dim)


def _dense_path(matrix, m: int) -> np.ndarray:
    dense = matrix.toarray() if sp.issparse(matrix) else np.asarray(matrix, dtype=float)
    vals = np.linalg.eigvalsh(dense)
    order = np.argsort(np.abs(vals), kind="stable")[:m]
    return np.sort(vals[order])


def _shift_invert_path(matrix, m: int, config: SolverConfig) -> np.ndarray:
    a = sp.csc_matrix(matrix)
    n = a.shape[0]
    if m >= n:
        return _dense_path(a, m)
    v0 = np.full(n, 1.0 / np.sqrt(n))  # fixed start vector for determinism
    scale = float(abs(a).max()) if a.nnz else 1.0
    for sigma in (config.sigma, config.sigma + config.reshift_scale * scale):
        try:
            vals = spla.eigsh(a, k=m, sigma=sigma, which="LM", v0=v0,
                              tol=config.tol, maxiter=config.maxiter,
                              return_eigenvectors=False)
        except RuntimeError:
            # singular factorization at a true zero mode; retry with tiny shift
            continue
        except spla.ArpackNoConvergence as exc:
            raise ConvergenceFailure(f"ARPACK did not converge (k={m}, n={n})") from exc
        return np.sort(np.asarray(vals, dtype=float))
    raise ConvergenceFailure(f"shift-invert factorization failed at sigma={config.sigma} and after reshift")


def eigs_near_zero(matrix, m: int, config: SolverConfig = DEFAULT_SOLVER) -> np.ndarray:
    """The m eigenvalues of a real symmetric matrix with smallest |E|, ascending."""
    n = matrix.shape[0]
    if m > n:
        raise ValueError(f"requested {m} eigenvalues from a dimension-{n} matrix")
    if m == 0:
        return np.empty(0)
    if config.method == "dense" or (config.method == "auto" and n <= config.dense_threshold):
        return _dense_path(matrix, m)
    return _shift_invert_path(matrix, m, config)


@dataclass(frozen=True)
class RawSpectrum:
    """Window of M eigenvalues nearest E=0 for one (block, j, lambda)."""

    block: Optional[BlockLabel]
    two_j: Optional[TwoJ]
    lam: Optional[float]
    energies: np.ndarray          # sorted ascending
    matrix_scale: float           # max |entry| of the source matrix
    window_truncated: bool = False  # True when block dim < the M policy asked for

    @property
    def m(self) -> int:
        return len(self.energies)

    def zero_tolerance(self, zero_tol: Optional[float] = None) -> float:
        if zero_tol is not None:
            return zero_tol
        return 1e-8 * self.matrix_scale


@dataclass(frozen=True)
class UnfoldedSpectrum:
    """Positive eigenvalues in units of the window's mean level spacing."""

    block: Optional[BlockLabel]
    two_j: Optional[TwoJ]
    lam: Optional[float]
    mean_spacing: float
    e: np.ndarray                 # 0 < e_1 <= e_2 <= ...
    zero_modes_removed: int
    window_truncated: bool = False


def mirror_residual(energies) -> float:
    """max_n |E_n + E_(M+1-n)| of a sorted window; 0 for an exactly mirror-symmetric one."""
    if isinstance(energies, RawSpectrum):
        energies = energies.energies
    e = np.sort(np.asarray(energies, dtype=float))
    if len(e) < 2:
        return 0.0
    return float(np.abs(e + e[::-1]).max())


def mirror_residual_pair(raw_a: RawSpectrum, raw_b: RawSpectrum) -> float:
    """Mirror residual of the union window; the check for the PM/MM pair."""
    return mirror_residual(np.concatenate([raw_a.energies, raw_b.energies]))


def unfold(raw: RawSpectrum, nu: int, zero_tol: Optional[float] = None) -> UnfoldedSpectrum:
    """Remove exactly nu zero modes and rescale by the mean level spacing.

    The mean spacing (E_max - E_min)/(M-1) is estimated from the full raw
    window including any zero modes; only the strictly positive remainder
    enters the unfolded list.  A zero-mode count different from nu signals
    a symmetry-implementation bug and raises ZeroModeMismatch.
    """
    e = raw.energies
    if len(e) < 2:
        raise ValueError("unfolding needs at least two eigenvalues")
    tol = raw.zero_tolerance(zero_tol)
    zero_mask = np.abs(e) < tol
    n_zero = int(zero_mask.sum())
    if n_zero != nu:
        raise ZeroModeMismatch(
            f"block {raw.block} (2j={getattr(raw.two_j, 'value', None)}, lambda={raw.lam}): "
            f"{n_zero} eigenvalues below {tol:.2e} but topological index is {nu}")
    mean_spacing = float(e[-1] - e[0]) / (len(e) - 1)
    positives = e[(e > 0) & ~zero_mask]
    return UnfoldedSpectrum(block=raw.block, two_j=raw.two_j, lam=raw.lam,
                            mean_spacing=mean_spacing, e=positives / mean_spacing,
                            zero_modes_removed=n_zero, window_truncated=raw.window_truncated)


def block_spectrum(params: ModelParams, label: BlockLabel, m: Optional[int] = None,
                   config: SolverConfig = DEFAULT_SOLVER) -> RawSpectrum:
    """Build one reduced block and solve for its window of eigenvalues nearest 0."""
    matrix = model.reduce_block(params, label)
    dim = matrix.shape[0]
    requested = default_m(dim) if m is None else m
    effective = min(requested, dim)
    energies = eigs_near_zero(matrix, effective, config) if effective else np.empty(0)
    scale = float(abs(matrix).max()) if matrix.nnz else 0.0
    return RawSpectrum(block=label, two_j=params.two_j, lam=params.lam,
                       energies=energies, matrix_scale=scale,
                       window_truncated=effective < requested or dim < requested)

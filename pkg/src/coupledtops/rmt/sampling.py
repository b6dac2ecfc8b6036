"""Monte Carlo ensemble samplers used as independent oracles.

The chiral sampler draws H = [[0, W], [W^T, 0]] with W an n x (n+nu)
matrix of independent standard Gaussians; its spectrum is exactly
mirror-symmetric, with |nu| zero modes and the positive side equal to
the singular values of W.  Unfolding uses the analytically known
macroscopic mean spacing at the origin, pi/(2 sqrt(n)), so the
microscopic comparison carries no fitted constant.  The GOE sampler
draws (G + G^T)/2 and unfolds the central spacings by pi/sqrt(2n).

All streams are counter-based (Philox) and fully reproducible from the
seed; `shard` selects a disjoint substream so work can be split across
workers and merged deterministically by shard index.
"""

from __future__ import annotations

import math
from typing import Iterator, Optional

import numpy as np


def _stream(seed: int, shard: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(shard,))))


def chgoe_center_spacing(n: int) -> float:
    """Macroscopic mean level spacing of the chiral ensemble at E=0."""
    return math.pi / (2.0 * math.sqrt(n))


def goe_center_spacing(n: int) -> float:
    """Macroscopic mean level spacing of (G + G^T)/2 at the band center."""
    return math.pi / math.sqrt(2.0 * n)


def sample_chgoe(n: int, nu: int, count: int, seed: int,
                 batch: int = 64, shard: int = 0) -> Iterator[np.ndarray]:
    """Stream of `count` unfolded positive-eigenvalue sets, zero modes removed.

    Each yielded array holds the n (ascending) positive eigenvalues of one
    draw minus the nu exact zero modes, in units of the mean spacing.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if nu not in (0, 1):
        raise ValueError(f"nu must be 0 or 1, got {nu}")
    rng = _stream(seed, shard)
    spacing = chgoe_center_spacing(n)
    remaining = count
    while remaining > 0:
        b = min(batch, remaining)
        w = rng.standard_normal((b, n, n + nu))
        gram = w @ w.transpose(0, 2, 1)
        vals = np.linalg.eigvalsh(gram)          # ascending, >= 0 up to roundoff
        sv = np.sqrt(np.clip(vals, 0.0, None)) / spacing
        sv = sv[:, nu:]                           # drop the exact zero modes
        for row in sv:
            yield row
        remaining -= b


def chgoe_first_eigenvalues(n: int, nu: int, count: int, seed: int, batch: int = 64) -> np.ndarray:
    """Smallest positive unfolded eigenvalue of each draw."""
    return np.array([row[0] for row in sample_chgoe(n, nu, count, seed, batch=batch)])


def chgoe_density_histogram(n: int, nu: int, count: int, seed: int,
                            bins: int = 60, e_max: float = 3.0, batch: int = 64,
                            collect_first: bool = False):
    """Histogram estimate of the microscopic density of states d(e) on [0, e_max].

    Returns (density, edges, counts) and, when collect_first, also the array
    of first eigenvalues gathered in the same pass.
    """
    edges = np.linspace(0.0, e_max, bins + 1)
    counts = np.zeros(bins, dtype=np.int64)
    first = np.empty(count) if collect_first else None
    for i, row in enumerate(sample_chgoe(n, nu, count, seed, batch=batch)):
        inside = row[row <= e_max]
        counts += np.histogram(inside, bins=edges)[0]
        if collect_first:
            first[i] = row[0]
    width = edges[1] - edges[0]
    density = counts / (count * width)
    if collect_first:
        return density, edges, counts, first
    return density, edges, counts


def sample_goe(n: int, count: int, seed: int, n_central: int = 10,
               batch: int = 64, shard: int = 0) -> Iterator[np.ndarray]:
    """Stream of `count` arrays of unfolded central level spacings per draw."""
    if n < max(4, n_central + 2):
        raise ValueError("n too small for the requested central window")
    rng = _stream(seed, shard)
    spacing = goe_center_spacing(n)
    lo = n // 2 - n_central // 2
    remaining = count
    while remaining > 0:
        b = min(batch, remaining)
        g = rng.standard_normal((b, n, n))
        a = 0.5 * (g + g.transpose(0, 2, 1))
        vals = np.linalg.eigvalsh(a)
        window = vals[:, lo:lo + n_central + 1]
        spacings = np.diff(window, axis=1) / spacing
        for row in spacings:
            yield row
        remaining -= b


def goe_spacing_samples(n: int, count: int, seed: int, n_central: int = 10,
                        batch: int = 64) -> np.ndarray:
    """All central spacings from `count` draws, flattened."""
    return np.concatenate(list(sample_goe(n, count, seed, n_central=n_central, batch=batch)))


def empirical_cdf_distance(samples, cdf, grid: Optional[np.ndarray] = None) -> float:
    """Kolmogorov-Smirnov distance between a sample and a reference CDF."""
    s = np.sort(np.asarray(samples, dtype=float))
    n = len(s)
    ref = np.array([cdf(x) for x in s])
    upper = np.arange(1, n + 1) / n - ref
    lower = ref - np.arange(0, n) / n
    return float(max(upper.max(), lower.max()))

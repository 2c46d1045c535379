"""Data-quality perturbations: random deletion, Gaussian fitness noise, and
mutagenesis-biased sampling around a focal genotype."""

from __future__ import annotations

import numpy as np

from .errors import FocalNotFoundError
from .landscape import Landscape


def subsample(
    landscape: Landscape,
    alpha: float,
    seed: int = 0,
    keep_global_optimum: bool = True,
) -> Landscape:
    """Remove floor(alpha * node_count) uniformly chosen nodes.

    Deletion sets are nested across alpha for a fixed seed (a permutation
    prefix), so growing alpha only ever removes more of the same nodes.  The
    tie-broken global optimum survives unless ``keep_global_optimum=False``.
    """
    if not 0 <= alpha < 1:
        raise ValueError(f"deletion fraction alpha={alpha} outside [0, 1)")
    n_delete = int(alpha * landscape.node_count)
    if n_delete == 0:
        return landscape
    rng = np.random.Generator(np.random.Philox(seed))
    perm = rng.permutation(landscape.node_count)
    if keep_global_optimum:
        perm = perm[perm != landscape.optima.global_optimum]
    keep = np.ones(landscape.node_count, dtype=bool)
    keep[perm[:n_delete]] = False
    return landscape.subset(np.flatnonzero(keep))


def accessibility_correction(measured: float, alpha: float) -> float:
    """Partial correction of global-optimum accessibility after deletion.

    Random removal of a fraction alpha of variants destroys increasing paths
    roughly in proportion to the data kept, so dividing the measured value
    by (1 - alpha) approximately recovers the complete-landscape figure.
    """
    if not 0 <= alpha < 1:
        raise ValueError(f"deletion fraction alpha={alpha} outside [0, 1)")
    return measured / (1.0 - alpha)


def add_noise(landscape: Landscape, beta: float, seed: int = 0) -> Landscape:
    """Add i.i.d. N(0, (beta * sd(f))^2) to every fitness and rebuild edges."""
    if beta < 0:
        raise ValueError(f"noise level beta={beta} must be >= 0")
    sigma_f = float(landscape.fitness.std())
    if beta == 0 or sigma_f == 0:
        return landscape
    rng = np.random.Generator(np.random.Philox(seed))
    noise = rng.normal(0.0, beta * sigma_f, size=landscape.node_count)
    return landscape.with_fitness(landscape.fitness + noise)


def biased_sample(
    landscape: Landscape,
    focal: int,
    rate: float,
    draws: int,
    seed: int = 0,
) -> tuple[Landscape, int]:
    """Library from repeated mutagenesis of a focal genotype.

    Each draw substitutes every site independently with probability ``rate``
    (substitute allele uniform over the other m_i - 1).  Duplicates collapse,
    only observed variants are kept, and the focal genotype is always
    included.  Returns the induced landscape and its realized library size.
    """
    if not 0 <= rate <= 1:
        raise ValueError(f"per-site mutation rate {rate} outside [0, 1]")
    if draws < 1:
        raise ValueError("draws must be >= 1")
    _, present = landscape.lookup(np.asarray([focal]))
    if not present[0]:
        raise FocalNotFoundError(f"focal genotype code {focal} not in landscape")
    sp = landscape.space
    rng = np.random.Generator(np.random.Philox(seed))
    lib = np.zeros(draws, dtype=np.int64)
    for i in range(sp.n):
        m = sp.m[i]
        d_focal = (focal // int(sp.weights[i])) % m
        mutate = rng.random(draws) < rate
        offset = rng.integers(1, m, size=draws)
        digit = np.where(mutate, (d_focal + offset) % m, d_focal)
        lib += digit * sp.weights[i]
    lib = np.unique(np.concatenate((lib, [focal])))
    pos, present = landscape.lookup(lib)
    keep = np.unique(pos[present])
    induced = landscape.subset(keep)
    return induced, induced.node_count

"""Navigability and neutrality features: fitness-distance correlation,
global-optimum accessibility, basin-fitness correlations, evolvability-
enhancing mutation fraction, neutrality, and accessible path lengths."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._stats import pearson
from .landscape import Landscape

DEFAULT_MAX_OPTIMA = 10_000


def default_sigma(landscape: Landscape) -> float:
    """0, or the median replicate standard deviation when variances exist."""
    if landscape.variance is not None:
        sd = np.sqrt(landscape.variance[~np.isnan(landscape.variance)])
        if sd.size:
            return float(np.median(sd))
    return 0.0


def hamming_to(landscape: Landscape, pos: int) -> np.ndarray:
    """Hamming distance from every node to the node at ``pos``."""
    sp = landscape.space
    target = int(landscape.codes[pos])
    dist = np.zeros(landscape.node_count, dtype=np.int64)
    for i in range(sp.n):
        d_t = (target // int(sp.weights[i])) % sp.m[i]
        dist += sp.digits(landscape.codes, i) != d_t
    return dist


def fdc(landscape: Landscape) -> float | None:
    """Pearson correlation of fitness with Hamming distance to the
    tie-broken global optimum."""
    return pearson(
        landscape.fitness, hamming_to(landscape, landscape.optima.global_optimum)
    )


def global_accessibility(landscape: Landscape) -> float:
    """Fraction of observed nodes with an adaptive walk into the global optimum."""
    member, _ = landscape.accessible_ancestors(landscape.optima.global_optimum)
    return float(member.sum() / landscape.node_count)


def mean_accessible_path_length(landscape: Landscape) -> float:
    """Mean shortest adaptive-walk length to the global optimum over its basin."""
    member, dist = landscape.accessible_ancestors(landscape.optima.global_optimum)
    return float(dist[member].mean())


class BasinCorrelation(NamedTuple):
    value: float | None
    sampled: bool


def basin_fitness_correlation(
    landscape: Landscape,
    mode: str = "greedy",
    max_optima: int = DEFAULT_MAX_OPTIMA,
    seed: int = 0,
) -> BasinCorrelation:
    """Correlation between local-optimum fitness and basin size.

    ``greedy`` uses the deterministic best-improvement partition; ``accessible``
    counts all ancestors per optimum and falls back to a seeded sample of
    optima above ``max_optima`` (flagged).  None with fewer than 2 optima or
    degenerate variance.
    """
    optima = landscape.optima.local_optima
    if optima.size < 2:
        return BasinCorrelation(None, False)
    if mode == "greedy":
        sizes_map = landscape.greedy_basins()
        sizes = np.asarray([sizes_map.get(int(o), 0) for o in optima], dtype=np.float64)
        return BasinCorrelation(pearson(landscape.fitness[optima], sizes), False)
    if mode != "accessible":
        raise ValueError(f"unknown basin mode {mode!r}")
    sampled = False
    chosen = optima
    if optima.size > max_optima:
        rng = np.random.Generator(np.random.Philox(seed))
        chosen = rng.choice(optima, size=max_optima, replace=False)
        chosen.sort()
        sampled = True
    sizes = np.asarray(
        [landscape.accessible_basin(int(o)).size for o in chosen], dtype=np.float64
    )
    return BasinCorrelation(pearson(landscape.fitness[chosen], sizes), sampled)


def _neighbor_sums(landscape: Landscape) -> tuple[np.ndarray, np.ndarray]:
    """Per-node sum of neighbor fitness and neighbor count."""
    sums = np.bincount(
        landscape.nbr_rows,
        weights=landscape.nbr_target_fitness,
        minlength=landscape.node_count,
    )
    return sums, landscape.degree.astype(np.int64)


def ee_fraction(landscape: Landscape, sigma: float = 0.0) -> float | None:
    """Fraction of evaluated mutations that improve the fitness prospects of
    subsequent mutations at other loci.

    Beneficial mutations (gain > sigma) pass when the mean fitness advantage
    of the off-locus neighborhood over the focal genotype grows across the
    step; sigma-neutral ones (|gain| < sigma, only when sigma > 0) pass when
    the off-locus neighborhood mean itself increases.  Mutations whose
    endpoints lack off-locus neighbors are not evaluated.
    """
    f = landscape.fitness
    s_total, c_total = _neighbor_sums(landscape)
    evaluated = 0
    enhancing = 0
    per_locus: dict[int, list[tuple[np.ndarray, np.ndarray]]] = {}
    for locus, _target, src, dst in landscape.iter_substitutions():
        per_locus.setdefault(locus, []).append((src, dst))
    for locus, pairs in per_locus.items():
        s_j = np.zeros(landscape.node_count)
        c_j = np.zeros(landscape.node_count, dtype=np.int64)
        for src, dst in pairs:
            np.add.at(s_j, src, f[dst])
            np.add.at(c_j, src, 1)
        for src, dst in pairs:
            gain = f[dst] - f[src]
            n_src = c_total[src] - c_j[src]
            n_dst = c_total[dst] - c_j[dst]
            ok = (n_src > 0) & (n_dst > 0)
            if not ok.any():
                continue
            mean_src = (s_total[src] - s_j[src])[ok] / n_src[ok]
            mean_dst = (s_total[dst] - s_j[dst])[ok] / n_dst[ok]
            g = gain[ok]
            beneficial = g > sigma
            evaluated += int(np.count_nonzero(beneficial))
            enhancing += int(
                np.count_nonzero(
                    beneficial
                    & ((mean_dst - f[dst][ok]) > (mean_src - f[src][ok]))
                )
            )
            if sigma > 0:
                neutral = np.abs(g) < sigma
                evaluated += int(np.count_nonzero(neutral))
                enhancing += int(np.count_nonzero(neutral & (mean_dst > mean_src)))
    if evaluated == 0:
        return None
    return enhancing / evaluated


def neutrality(landscape: Landscape, sigma: float = 0.0) -> float | None:
    """Mean fraction of sigma-neutral neighbors per node (|df| < sigma);
    nodes without observed neighbors are excluded."""
    deg = landscape.degree
    ok = deg > 0
    if not ok.any():
        return None
    close = (
        np.abs(landscape.nbr_target_fitness - landscape.fitness[landscape.nbr_rows])
        < sigma
    )
    counts = np.bincount(landscape.nbr_rows, weights=close, minlength=landscape.node_count)
    return float(np.mean(counts[ok] / deg[ok]))


@dataclass(frozen=True)
class NavigabilityReport:
    fdc: float | None
    alpha_go: float
    bfc_acc: float | None
    bfc_greedy: float | None
    phi_ee: float | None
    eta: float | None
    mean_acc_path: float
    sigma_used: float
    bfc_acc_sampled: bool = False


def compute_navigability(
    landscape: Landscape,
    sigma: float | None = None,
    max_optima: int = DEFAULT_MAX_OPTIMA,
    seed: int = 0,
    with_bfc_acc: bool = True,
) -> NavigabilityReport:
    sig = default_sigma(landscape) if sigma is None else sigma
    acc = (
        basin_fitness_correlation(landscape, "accessible", max_optima, seed)
        if with_bfc_acc
        else BasinCorrelation(None, False)
    )
    greedy = basin_fitness_correlation(landscape, "greedy")
    return NavigabilityReport(
        fdc=fdc(landscape),
        alpha_go=global_accessibility(landscape),
        bfc_acc=acc.value,
        bfc_greedy=greedy.value,
        phi_ee=ee_fraction(landscape, sig),
        eta=neutrality(landscape, sig),
        mean_acc_path=mean_accessible_path_length(landscape),
        sigma_used=sig,
        bfc_acc_sampled=acc.sampled,
    )

"""Ruggedness features: local-optima fraction, roughness/slope ratio,
random-walk autocorrelation, aggregate fitness-effect correlation, and
neighbor-fitness correlation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._stats import VAR_EPS, pearson
from .errors import DegenerateFitError, NoNeighborsError
from .landscape import Landscape
from .squares import scan_squares

RS_EPS = 1e-12


@dataclass(frozen=True)
class RuggednessReport:
    phi_lo: float
    rs_ratio: float | None
    rho_a: float | None
    gamma1: float | None
    nfc: float | None
    n_walks: int
    walk_length: int


def fraction_local_optima(landscape: Landscape) -> float:
    """Sinks divided by observed node count."""
    return landscape.optima.count / landscape.node_count


def reference_alleles(landscape: Landscape) -> list[int]:
    """Per-locus reference allele index: the first symbol in sorted order."""
    return [
        int(np.argsort(np.array(alpha, dtype=str))[0])
        for alpha in landscape.space.alphabets
    ]


def additive_design(landscape: Landscape) -> np.ndarray:
    """One-hot design with intercept, one reference allele dropped per locus."""
    sp = landscape.space
    refs = reference_alleles(landscape)
    cols = [np.ones(landscape.node_count)]
    for i in range(sp.n):
        digits = sp.digits(landscape.codes, i)
        for a in range(sp.m[i]):
            if a != refs[i]:
                cols.append((digits == a).astype(np.float64))
    return np.column_stack(cols)


def rs_ratio(landscape: Landscape) -> float | None:
    """RMSE of the additive OLS fit over the mean |coefficient|.

    0 when the fit is exact, None (undefined) when the mean coefficient
    magnitude vanishes (constant or fully symmetric landscapes).
    """
    design = additive_design(landscape)
    beta, _, rank, _ = np.linalg.lstsq(design, landscape.fitness, rcond=None)
    if rank < design.shape[1]:
        raise DegenerateFitError(
            f"additive design rank {rank} < {design.shape[1]} columns; "
            "too few observed genotypes to identify all allele effects"
        )
    resid = landscape.fitness - design @ beta
    r = float(np.sqrt(np.mean(resid * resid)))
    s = float(np.mean(np.abs(beta[1:])))
    if s <= RS_EPS:
        return None
    if r <= RS_EPS:
        return 0.0
    return r / s


def random_walk_pairs(
    landscape: Landscape, n_walks: int, walk_length: int, seed: int
) -> tuple[np.ndarray, np.ndarray]:
    """Fitness values along fitness-blind random walks, as (f(g_t), f(g_t+1)).

    Walks start at uniformly random nodes, step to a uniformly random
    observed neighbor, and end early at nodes with no observed neighbor.
    """
    if landscape.nbr_targets.size == 0:
        raise NoNeighborsError("no node has any observed neighbor")
    rng = np.random.Generator(np.random.Philox(seed))
    pos = rng.integers(landscape.node_count, size=n_walks)
    deg = landscape.degree
    xs: list[np.ndarray] = []
    ys: list[np.ndarray] = []
    for _ in range(walk_length):
        active = deg[pos] > 0
        if not active.any():
            break
        p = pos[active]
        d = deg[p]
        pick = landscape.nbr_offsets[p] + np.minimum(
            (rng.random(p.size) * d).astype(np.int64), d - 1
        )
        nxt = landscape.nbr_targets[pick]
        xs.append(landscape.fitness[p])
        ys.append(landscape.fitness[nxt])
        pos = pos.copy()
        pos[active] = nxt
    if not xs:
        return np.empty(0), np.empty(0)
    return np.concatenate(xs), np.concatenate(ys)


def autocorrelation(
    landscape: Landscape,
    n_walks: int = 1000,
    walk_length: int | None = None,
    seed: int = 0,
) -> float | None:
    """Lag-1 autocorrelation of fitness along random walks.

    Estimated over all adjacent pairs pooled across walks, with the mean and
    variance taken over the pre-step states; None when the pooled fitness
    variance vanishes.
    """
    length = landscape.space.n if walk_length is None else walk_length
    x, y = random_walk_pairs(landscape, n_walks, length, seed)
    if x.size == 0:
        return None
    mu = x.mean()
    var = float(((x - mu) ** 2).mean())
    if var <= VAR_EPS:
        return None
    return float(((x - mu) * (y - mu)).mean() / var)


def gamma1(landscape: Landscape) -> float | None:
    """Aggregate correlation of single-mutation effects across one-step
    background changes, over all locus pairs, substitutions, and backgrounds
    with all four genotypes observed."""
    return scan_squares(landscape).gamma


def neighbor_fitness_correlation(landscape: Landscape) -> float | None:
    """Pearson correlation between f(g) and the mean fitness of observed
    neighbors; nodes without observed neighbors are excluded."""
    deg = landscape.degree
    ok = deg > 0
    if not ok.any():
        return None
    sums = np.bincount(
        landscape.nbr_rows,
        weights=landscape.nbr_target_fitness,
        minlength=landscape.node_count,
    )
    return pearson(landscape.fitness[ok], sums[ok] / deg[ok])


def compute_ruggedness(
    landscape: Landscape,
    n_walks: int = 1000,
    walk_length: int | None = None,
    seed: int = 0,
    scan=None,
) -> RuggednessReport:
    """All five ruggedness features; ``scan`` lets callers reuse a square scan."""
    length = landscape.space.n if walk_length is None else walk_length
    try:
        rs = rs_ratio(landscape)
    except DegenerateFitError:
        rs = None
    try:
        rho = autocorrelation(landscape, n_walks, length, seed)
    except NoNeighborsError:
        rho = None
    if scan is None and landscape.space.n >= 2:
        scan = scan_squares(landscape)
    return RuggednessReport(
        phi_lo=fraction_local_optima(landscape),
        rs_ratio=rs,
        rho_a=rho,
        gamma1=None if scan is None else scan.gamma,
        nfc=neighbor_fitness_correlation(landscape),
        n_walks=n_walks,
        walk_length=length,
    )

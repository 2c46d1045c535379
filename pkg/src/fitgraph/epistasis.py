"""Epistasis features: pairwise interaction classes, global trends
(diminishing returns / increasing costs), idiosyncrasy, and the variance
explained by a second-order model."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._stats import VAR_EPS, pearson
from .errors import NoCompleteSquaresError
from .landscape import Landscape
from .ruggedness import additive_design, reference_alleles
from .squares import SquareScan, scan_squares

EPS_TOL_DEFAULT = 1e-9
DEFAULT_MAX_FIT_NODES = 100_000


def default_eps_tol(landscape: Landscape) -> float:
    """1e-9, or the median replicate standard deviation when variances exist."""
    if landscape.variance is not None:
        sd = np.sqrt(landscape.variance[~np.isnan(landscape.variance)])
        if sd.size:
            med = float(np.median(sd))
            if med > 0:
                return med
    return EPS_TOL_DEFAULT


@dataclass(frozen=True)
class SquareClassification:
    """Fractions of epistasis classes over epistatic squares."""

    n_total: int
    n_epistatic: int
    eps_mag: float
    eps_sign: float
    eps_reci: float
    eps_pos: float
    eps_neg: float

    @classmethod
    def from_scan(cls, scan: SquareScan) -> "SquareClassification":
        ne = scan.n_epistatic
        frac = (lambda c: c / ne) if ne else (lambda c: 0.0)
        return cls(
            n_total=scan.n_total,
            n_epistatic=ne,
            eps_mag=frac(scan.n_magnitude),
            eps_sign=frac(scan.n_sign),
            eps_reci=frac(scan.n_reciprocal),
            eps_pos=frac(scan.n_positive),
            eps_neg=frac(scan.n_negative),
        )


def classify_squares(
    landscape: Landscape, eps_tol: float = EPS_TOL_DEFAULT
) -> SquareClassification:
    """Classify every observed square as magnitude / sign / reciprocal sign.

    Fractions are over epistatic squares (|epsilon| > eps_tol) only; they are
    reported as 0 when no square is epistatic.
    """
    scan = scan_squares(landscape, eps_tol)
    if scan.n_total == 0:
        raise NoCompleteSquaresError(
            "no background has all four corners of any square observed"
        )
    return SquareClassification.from_scan(scan)


def global_epistasis(landscape: Landscape) -> tuple[float | None, float | None]:
    """(diminishing returns, increasing costs) over single-step mutations.

    Diminishing returns: correlation of background fitness with the gain of
    beneficial mutations.  Increasing costs: correlation of background
    fitness with the magnitude of deleterious ones.
    """
    bg = landscape.fitness[landscape.nbr_rows]
    s = landscape.nbr_target_fitness - bg
    ben = s > 0
    dele = s < 0
    eps_dr = pearson(bg[ben], s[ben])
    eps_ic = pearson(bg[dele], -s[dele])
    return eps_dr, eps_ic


def idiosyncrasy_index(landscape: Landscape) -> float | None:
    """Mean over directed mutation types of sd(effect across backgrounds)
    normalized by the sd of all observed selection coefficients.

    Types observed in fewer than 2 backgrounds are skipped; None when the
    global coefficient variance vanishes.
    """
    sp = landscape.space
    f = landscape.fitness
    g_count = 0
    g_sum = 0.0
    g_sumsq = 0.0
    type_sd: list[float] = []
    for locus, _target, src, dst in landscape.iter_substitutions():
        if src.size == 0:
            continue
        s = f[dst] - f[src]
        g_count += s.size
        g_sum += float(s.sum())
        g_sumsq += float((s * s).sum())
        src_allele = sp.digits(landscape.codes[src], locus)
        cnt = np.bincount(src_allele, minlength=sp.m[locus])
        sm = np.bincount(src_allele, weights=s, minlength=sp.m[locus])
        # deviations from the per-type mean keep constant-effect types at
        # exactly zero variance (no cancellation)
        mean = np.divide(sm, cnt, out=np.zeros_like(sm), where=cnt > 0)
        dev = s - mean[src_allele]
        sq = np.bincount(src_allele, weights=dev * dev, minlength=sp.m[locus])
        enough = cnt >= 2
        if enough.any():
            type_sd.extend(np.sqrt(sq[enough] / cnt[enough]).tolist())
    if g_count == 0:
        return None
    v_s = g_sumsq / g_count - (g_sum / g_count) ** 2
    if v_s <= VAR_EPS or not type_sd:
        return None
    return float(np.mean(type_sd) / np.sqrt(v_s))


class PairwiseR2(NamedTuple):
    value: float | None
    sampled: bool
    degenerate: bool


def pairwise_r2(
    landscape: Landscape,
    max_fit_nodes: int = DEFAULT_MAX_FIT_NODES,
    seed: int = 0,
) -> PairwiseR2:
    """R^2 of an OLS fit with one-hot main effects plus all between-locus
    pairwise interaction columns, evaluated on the fitted data.

    Landscapes above ``max_fit_nodes`` are fitted on a seeded uniform
    subsample (flagged).  The degenerate flag marks rank-deficient designs;
    the R^2 of the least-squares projection is still reported.
    """
    sampled = False
    sub = landscape
    if landscape.node_count > max_fit_nodes:
        rng = np.random.Generator(np.random.Philox(seed))
        keep = rng.choice(landscape.node_count, size=max_fit_nodes, replace=False)
        keep.sort()
        sub = landscape.subset(keep)
        sampled = True
    y = sub.fitness
    if float(np.var(y)) <= VAR_EPS:
        return PairwiseR2(None, sampled, False)

    design = additive_design(sub)
    sp = sub.space
    refs = reference_alleles(sub)
    # column index of (locus, allele) among the main-effect columns
    col_of: dict[tuple[int, int], int] = {}
    k = 1
    for i in range(sp.n):
        for a in range(sp.m[i]):
            if a != refs[i]:
                col_of[(i, a)] = k
                k += 1
    inter = []
    for i in range(sp.n):
        for a in range(sp.m[i]):
            if a == refs[i]:
                continue
            for j in range(i + 1, sp.n):
                for b in range(sp.m[j]):
                    if b == refs[j]:
                        continue
                    inter.append(design[:, col_of[(i, a)]] * design[:, col_of[(j, b)]])
    if inter:
        design = np.column_stack([design] + inter)
    beta, _, rank, _ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ beta
    sst = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - float((resid * resid).sum()) / sst
    return PairwiseR2(min(max(r2, 0.0), 1.0), sampled, rank < design.shape[1])


@dataclass(frozen=True)
class EpistasisReport:
    eps_mag: float
    eps_sign: float
    eps_reci: float
    eps_pos: float
    eps_neg: float
    n_squares_total: int
    n_squares_epistatic: int
    eps_dr: float | None
    eps_ic: float | None
    i_id: float | None
    eps_pairwise_r2: float | None
    eps_tol: float
    pairwise_sampled: bool = False
    pairwise_degenerate: bool = False


def compute_epistasis(
    landscape: Landscape,
    eps_tol: float | None = None,
    max_fit_nodes: int = DEFAULT_MAX_FIT_NODES,
    seed: int = 0,
    scan: SquareScan | None = None,
    with_pairwise_r2: bool = True,
) -> EpistasisReport:
    tol = default_eps_tol(landscape) if eps_tol is None else eps_tol
    if scan is None:
        scan = scan_squares(landscape, tol)
    cls = SquareClassification.from_scan(scan)
    eps_dr, eps_ic = global_epistasis(landscape)
    r2 = (
        pairwise_r2(landscape, max_fit_nodes, seed)
        if with_pairwise_r2
        else PairwiseR2(None, False, False)
    )
    return EpistasisReport(
        eps_mag=cls.eps_mag,
        eps_sign=cls.eps_sign,
        eps_reci=cls.eps_reci,
        eps_pos=cls.eps_pos,
        eps_neg=cls.eps_neg,
        n_squares_total=cls.n_total,
        n_squares_epistatic=cls.n_epistatic,
        eps_dr=eps_dr,
        eps_ic=eps_ic,
        i_id=idiosyncrasy_index(landscape),
        eps_pairwise_r2=r2.value,
        eps_tol=tol,
        pairwise_sampled=r2.sampled,
        pairwise_degenerate=r2.degenerate,
    )

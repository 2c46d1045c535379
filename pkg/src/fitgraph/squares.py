"""Enumeration of mutational squares (4-corner motifs).

A square is a background genotype plus one substitution at each of two loci:
corners A = g, B = g with locus i substituted, C = g with locus j
substituted, D = both.  Each geometric square is visited exactly once via its
canonical corner, the one carrying the smaller allele index at both focal
loci.  One pass accumulates everything downstream features need: epistasis
class counts and the aggregate single-step fitness-effect correlation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingleLocusError
from .landscape import Landscape

GAMMA_DEN_EPS = 1e-12


@dataclass(frozen=True)
class EpistasisSquare:
    """One mutational square, for inspection on small landscapes."""

    background: int  # canonical corner code
    loci: tuple[int, int]
    target_alleles: tuple[int, int]  # substituted allele indices at the two loci
    corner_fitness: tuple[float, float, float, float]  # f(A), f(B), f(C), f(D)

    @property
    def epsilon(self) -> float:
        fa, fb, fc, fd = self.corner_fitness
        return fd - fb - fc + fa


@dataclass
class SquareScan:
    """Accumulated totals from one pass over all complete squares."""

    n_total: int = 0
    n_epistatic: int = 0
    n_magnitude: int = 0
    n_sign: int = 0
    n_reciprocal: int = 0
    n_positive: int = 0
    n_negative: int = 0
    gamma_num: float = 0.0
    gamma_den: float = 0.0

    @property
    def gamma(self) -> float | None:
        if self.gamma_den <= GAMMA_DEN_EPS:
            return None
        return self.gamma_num / self.gamma_den


def scan_squares(landscape: Landscape, eps_tol: float = 0.0) -> SquareScan:
    """Single vectorized pass over every square with all four corners observed.

    Classification follows the sign products of the two substitutions: both
    non-negative -> magnitude, both negative -> reciprocal sign, mixed ->
    sign.  A product of exactly zero (a neutral arm) counts as no sign
    change.  |epsilon| <= eps_tol is non-epistatic.
    """
    sp = landscape.space
    if sp.n < 2:
        raise SingleLocusError("squares need at least two loci")
    codes = landscape.codes
    f = landscape.fitness
    complete = landscape.node_count == sp.total_size
    out = SquareScan()

    for i in range(sp.n):
        di = sp.digits(codes, i)
        wi = int(sp.weights[i])
        for j in range(i + 1, sp.n):
            dj = sp.digits(codes, j)
            wj = int(sp.weights[j])
            for a2 in range(1, sp.m[i]):
                mask_i = di < a2
                if not mask_i.any():
                    continue
                for b2 in range(1, sp.m[j]):
                    mask = mask_i & (dj < b2)
                    if not mask.any():
                        continue
                    step_i = (a2 - di[mask]) * wi
                    step_j = (b2 - dj[mask]) * wj
                    base = codes[mask]
                    if complete:
                        fa = f[mask]
                        fb = f[base + step_i]
                        fc = f[base + step_j]
                        fd = f[base + step_i + step_j]
                    else:
                        pb, okb = landscape.lookup(base + step_i)
                        pc, okc = landscape.lookup(base + step_j)
                        pd, okd = landscape.lookup(base + step_i + step_j)
                        ok = okb & okc & okd
                        if not ok.any():
                            continue
                        fa = f[mask][ok]
                        fb = f[pb[ok]]
                        fc = f[pc[ok]]
                        fd = f[pd[ok]]
                    _accumulate(out, fa, fb, fc, fd, eps_tol)
    return out


def _accumulate(out: SquareScan, fa, fb, fc, fd, eps_tol: float) -> None:
    eps = fd - fb - fc + fa
    arm_i0 = fb - fa  # locus-i substitution in the A background
    arm_i1 = fd - fc  # ... in the C background
    arm_j0 = fc - fa
    arm_j1 = fd - fb
    p_i = arm_i0 * arm_i1
    p_j = arm_j0 * arm_j1

    epistatic = np.abs(eps) > eps_tol
    reciprocal = epistatic & (p_i < 0) & (p_j < 0)
    magnitude = epistatic & (p_i >= 0) & (p_j >= 0)

    out.n_total += int(eps.size)
    out.n_epistatic += int(np.count_nonzero(epistatic))
    out.n_reciprocal += int(np.count_nonzero(reciprocal))
    out.n_magnitude += int(np.count_nonzero(magnitude))
    out.n_sign += int(np.count_nonzero(epistatic & ~reciprocal & ~magnitude))
    out.n_positive += int(np.count_nonzero(eps > eps_tol))
    out.n_negative += int(np.count_nonzero(eps < -eps_tol))

    # every square carries 8 (background, orientation) terms of the
    # fitness-effect correlation; they collapse to the two sign products
    out.gamma_num += 4.0 * float((p_i + p_j).sum())
    out.gamma_den += 2.0 * float(
        (arm_i0 * arm_i0 + arm_i1 * arm_i1 + arm_j0 * arm_j0 + arm_j1 * arm_j1).sum()
    )


def list_squares(landscape: Landscape, limit: int = 10000) -> list[EpistasisSquare]:
    """Materialized squares for small landscapes (debugging / inspection)."""
    sp = landscape.space
    if sp.n < 2:
        raise SingleLocusError("squares need at least two loci")
    codes = landscape.codes
    f = landscape.fitness
    squares: list[EpistasisSquare] = []
    for i in range(sp.n):
        di = sp.digits(codes, i)
        for j in range(i + 1, sp.n):
            dj = sp.digits(codes, j)
            for a2 in range(1, sp.m[i]):
                for b2 in range(1, sp.m[j]):
                    mask = (di < a2) & (dj < b2)
                    base = codes[mask]
                    si = (a2 - di[mask]) * int(sp.weights[i])
                    sj = (b2 - dj[mask]) * int(sp.weights[j])
                    pb, okb = landscape.lookup(base + si)
                    pc, okc = landscape.lookup(base + sj)
                    pd, okd = landscape.lookup(base + si + sj)
                    pa, _ = landscape.lookup(base)
                    ok = okb & okc & okd
                    for k in np.flatnonzero(ok):
                        squares.append(
                            EpistasisSquare(
                                background=int(base[k]),
                                loci=(i, j),
                                target_alleles=(a2, b2),
                                corner_fitness=(
                                    float(f[pa[k]]),
                                    float(f[pb[k]]),
                                    float(f[pc[k]]),
                                    float(f[pd[k]]),
                                ),
                            )
                        )
                        if len(squares) >= limit:
                            return squares
    return squares

import numpy as np
import pytest

import fitgraph as fg
from fitgraph.errors import DegenerateFitError, NoNeighborsError
from fitgraph.ruggedness import (
    autocorrelation,
    fraction_local_optima,
    gamma1,
    neighbor_fitness_correlation,
    rs_ratio,
)

from conftest import L5, make_landscape, random_landscape, seq_fitness
from oracles import brute_gamma


def test_phi_lo_values(l1, l2, constant):
    assert fraction_local_optima(l1) == 0.5
    assert fraction_local_optima(l2) == 0.25
    assert fraction_local_optima(constant) == 1.0


def test_rs_ratio_additive_is_zero(l2):
    assert rs_ratio(l2) == 0.0


def test_rs_ratio_l1_closed_form(l1):
    # full 2x2 factorial: beta = (0.25, 0.25), residual RMSE = 0.375
    assert rs_ratio(l1) == pytest.approx(1.5, abs=1e-9)


def test_rs_ratio_constant_undefined(constant):
    assert rs_ratio(constant) is None


def test_rs_ratio_degenerate_design():
    # locus-1 allele '1' never observed together enough to separate effects:
    # only 2 observations for 3 coefficients
    landscape = make_landscape({"00": 0.0, "11": 1.0}, alphabet="binary")
    with pytest.raises(DegenerateFitError):
        rs_ratio(landscape)


def test_autocorrelation_constant_undefined(constant):
    assert autocorrelation(constant, 100, 2, seed=1) is None


def _exact_rho1(data, alphabets):
    """Exact stationary lag-1 walk autocorrelation by full enumeration."""
    from oracles import seq_neighbors

    f = np.array(list(data.values()))
    mu = f.mean()
    var = ((f - mu) ** 2).mean()
    per_node = []
    for seq, fs in data.items():
        nbrs = [data[nb] for nb in seq_neighbors(seq, alphabets) if nb in data]
        if nbrs:
            per_node.append((fs - mu) * (np.mean(nbrs) - mu))
    return np.mean(per_node) / var


def test_autocorrelation_additive_matches_analytic():
    # exact binary-NK closed form: 1 - (K+1) 2^(K+1) / (N (2^(K+1)-1));
    # at K=0 that is 1 - 2/N (one locus flip undoes a two-value contribution)
    landscape = fg.nk(10, 0, seed=5)
    rho = autocorrelation(landscape, n_walks=1000, walk_length=10, seed=9)
    assert rho == pytest.approx(1 - 2 / 10, abs=0.05)
    landscape = fg.nk(12, 5, seed=5)
    rho = autocorrelation(landscape, n_walks=1000, walk_length=12, seed=9)
    assert rho == pytest.approx(1 - 6 * 64 / (12 * 63), abs=0.05)


def test_autocorrelation_matches_exact_enumeration():
    rng = np.random.default_rng(21)
    for _ in range(4):
        landscape = random_landscape(rng, max_size=128, completeness=0.9)
        exact = _exact_rho1(seq_fitness(landscape), landscape.space.alphabets)
        est = autocorrelation(landscape, n_walks=4000, walk_length=8, seed=3)
        assert est == pytest.approx(exact, abs=0.06)


def test_autocorrelation_hoc_is_uncorrelated():
    landscape = fg.hoc(10, seed=3)
    rho = autocorrelation(landscape, n_walks=1000, walk_length=10, seed=9)
    assert rho == pytest.approx(0.0, abs=0.05)


def test_autocorrelation_seed_reproducible():
    landscape = fg.nk(8, 3, seed=1)
    a = autocorrelation(landscape, 200, 8, seed=77)
    b = autocorrelation(landscape, 200, 8, seed=77)
    assert a == b


def test_autocorrelation_spread_across_seeds():
    landscape = fg.nk(10, 0, seed=5)
    values = [
        autocorrelation(landscape, n_walks=1000, walk_length=10, seed=s)
        for s in range(8)
    ]
    assert max(values) - min(values) < 0.1
    for v in values:
        assert v == pytest.approx(0.8, abs=0.05)


def test_autocorrelation_no_neighbors():
    space = fg.SequenceSpace.uniform(4, "binary")
    # two isolated observed nodes at Hamming distance 4
    landscape = fg.Landscape.from_arrays(
        space, np.array([0, 15]), np.array([0.0, 1.0])
    )
    with pytest.raises(NoNeighborsError):
        autocorrelation(landscape, 10, 4, seed=0)


def test_gamma_additive_is_one(l2):
    assert gamma1(l2) == pytest.approx(1.0, abs=1e-9)


def test_gamma_l1_hand_enumeration(l1):
    # numerator -4, denominator 5 over all eight background/pair terms
    assert gamma1(l1) == pytest.approx(-0.8, abs=1e-9)


def test_gamma_eggbox_fully_anticorrelated():
    assert gamma1(fg.eggbox(6)) == pytest.approx(-1.0, abs=1e-9)


def test_gamma_constant_undefined(constant):
    assert gamma1(constant) is None


def test_gamma_matches_brute_force_on_random_landscapes():
    rng = np.random.default_rng(11)
    for _ in range(12):
        landscape = random_landscape(
            rng, max_size=128, completeness=rng.choice([1.0, 0.7]),
            tie_prob=rng.choice([0.0, 0.5]),
        )
        want = brute_gamma(seq_fitness(landscape), landscape.space.alphabets)
        got = gamma1(landscape)
        if want is None:
            assert got is None
        else:
            assert got == pytest.approx(want, abs=1e-9)


def test_nfc_hand_values(l1, l2, l5):
    assert neighbor_fitness_correlation(l1) == pytest.approx(-0.90453403, abs=1e-6)
    assert neighbor_fitness_correlation(l2) is None  # all neighbor means equal
    assert neighbor_fitness_correlation(l5) == pytest.approx(-0.26726124, abs=1e-6)


def test_ranges_on_random_landscapes():
    rng = np.random.default_rng(12)
    for _ in range(10):
        landscape = random_landscape(rng, max_size=256, tie_prob=0.3)
        phi = fraction_local_optima(landscape)
        assert 0 <= phi <= 1
        rs = rs_ratio(landscape)
        if rs is not None:
            assert rs >= 0
        g = gamma1(landscape)
        if g is not None:
            assert -1 - 1e-9 <= g <= 1 + 1e-9
        nfc = neighbor_fitness_correlation(landscape)
        if nfc is not None:
            assert -1 - 1e-9 <= nfc <= 1 + 1e-9


def test_affine_invariance():
    rng = np.random.default_rng(13)
    landscape = random_landscape(rng, max_size=256)
    scaled = landscape.with_fitness(3.7 * landscape.fitness - 11.0)
    assert fraction_local_optima(scaled) == fraction_local_optima(landscape)
    assert rs_ratio(scaled) == pytest.approx(rs_ratio(landscape), abs=1e-9)
    assert gamma1(scaled) == pytest.approx(gamma1(landscape), abs=1e-9)
    assert neighbor_fitness_correlation(scaled) == pytest.approx(
        neighbor_fitness_correlation(landscape), abs=1e-9
    )
    a = autocorrelation(landscape, 300, 6, seed=3)
    b = autocorrelation(scaled, 300, 6, seed=3)
    assert b == pytest.approx(a, abs=1e-9)


def test_nk_ruggedness_trend_in_k():
    phis = []
    rhos = []
    for k in [0, 2, 4, 8, 11]:
        phi_vals = []
        rho_vals = []
        for seed in range(20):
            landscape = fg.nk(12, k, seed=seed)
            phi_vals.append(fraction_local_optima(landscape))
            rho_vals.append(autocorrelation(landscape, 500, 12, seed=seed))
        phis.append(np.mean(phi_vals))
        rhos.append(np.mean(rho_vals))
    assert all(b >= a for a, b in zip(phis, phis[1:]))
    assert all(b <= a for a, b in zip(rhos, rhos[1:]))

import numpy as np
import pytest

import fitgraph as fg
from fitgraph.errors import (
    ConflictingDuplicateError,
    EmptyInputError,
    NotAnOptimumError,
    StartNotFoundError,
)

from conftest import L1, L2, make_landscape, random_landscape, seq_fitness
from oracles import brute_accessible, brute_edges, brute_greedy_endpoint, brute_optima


def codes_of(landscape, *seqs):
    return [landscape.space.encode(tuple(s)) for s in seqs]


def edge_set(landscape):
    tails, heads = landscape.edge_list()
    sp = landscape.space
    return {
        (sp.decode(int(t)), sp.decode(int(h))) for t, h in zip(tails, heads)
    }


# -- ingest ----------------------------------------------------------------

def test_ingest_infers_space_and_completeness():
    records = [fg.VariantRecord(tuple(s), f) for s, f in L1.items()]
    result = fg.ingest(records)
    assert result.space.m == (2, 2)
    assert result.codes.size == 4
    assert result.completeness == 1.0
    assert result.duplicates_dropped == 0


def test_ingest_drops_exact_duplicates():
    records = [fg.VariantRecord(tuple(s), f) for s, f in L1.items()]
    records.append(fg.VariantRecord(("0", "1"), 1.0))
    result = fg.ingest(records)
    assert result.codes.size == 4
    assert result.duplicates_dropped == 1


def test_ingest_rejects_conflicting_duplicates():
    records = [
        fg.VariantRecord(("0", "1"), 1.0),
        fg.VariantRecord(("0", "1"), 2.0),
        fg.VariantRecord(("0", "0"), 0.0),
        fg.VariantRecord(("1", "0"), 0.5),
    ]
    with pytest.raises(ConflictingDuplicateError):
        fg.ingest(records)


def test_ingest_empty_input():
    with pytest.raises(EmptyInputError):
        fg.ingest([])


def test_single_record_with_preset_space():
    landscape = make_landscape({"00": 1.0}, alphabet="binary")
    assert landscape.node_count == 1
    assert landscape.edge_count == 0
    assert landscape.completeness == 0.25


# -- build -----------------------------------------------------------------

def test_l2_edges(l2):
    assert edge_set(l2) == {
        (("0", "0"), ("0", "1")),
        (("0", "0"), ("1", "0")),
        (("0", "1"), ("1", "1")),
        (("1", "0"), ("1", "1")),
    }


def test_l1_edges(l1):
    assert edge_set(l1) == {
        (("0", "0"), ("0", "1")),
        (("0", "0"), ("1", "0")),
        (("1", "1"), ("0", "1")),
        (("1", "1"), ("1", "0")),
    }
    assert l1.edge_count == 4


def test_equal_fitness_pairs_carry_no_edge(constant):
    assert constant.edge_count == 0


# -- optima ------------------------------------------------------------------

def test_l1_optima(l1):
    opt = l1.optima
    seqs = {l1.space.decode(int(l1.codes[p])) for p in opt.local_optima}
    assert seqs == {("0", "1"), ("1", "0")}
    assert l1.space.decode(int(l1.codes[opt.global_optimum])) == ("0", "1")
    assert opt.global_tie_count == 2


def test_l2_optima(l2):
    opt = l2.optima
    assert opt.count == 1
    assert l2.space.decode(int(l2.codes[opt.global_optimum])) == ("1", "1")
    assert opt.global_tie_count == 1


def test_constant_landscape_every_node_is_optimum(constant):
    assert constant.optima.count == 4


# -- walks -------------------------------------------------------------------

def test_greedy_walk_l2_prefers_larger_gain(l2):
    walk = l2.greedy_walk(l2.space.encode(("0", "0")))
    assert l2.space.decode(walk.endpoint) == ("1", "1")
    assert walk.steps == 2


def test_greedy_walk_l1_tie_breaks_lexicographically(l1):
    walk = l1.greedy_walk(l1.space.encode(("0", "0")))
    assert l1.space.decode(walk.endpoint) == ("0", "1")


def test_greedy_walk_from_sink_is_identity(l1):
    start = l1.space.encode(("1", "0"))
    walk = l1.greedy_walk(start)
    assert walk.endpoint == start
    assert walk.steps == 0


def test_greedy_walk_start_not_found():
    landscape = make_landscape({"00": 1.0, "01": 2.0}, alphabet="binary")
    with pytest.raises(StartNotFoundError):
        landscape.greedy_walk(3)


def test_stochastic_walk_l2_converges(l2):
    start = l2.space.encode(("0", "0"))
    for seed in range(20):
        walk = l2.stochastic_walk(start, seed)
        assert l2.space.decode(walk.endpoint) == ("1", "1")


def test_stochastic_walk_uniform_branching(l1):
    start = l1.space.encode(("0", "0"))
    hits = {"01": 0, "10": 0}
    n = 10_000
    for seed in range(n):
        walk = l1.stochastic_walk(start, seed)
        hits["".join(l1.space.decode(walk.endpoint))] += 1
    assert abs(hits["01"] / n - 0.5) < 0.02
    assert abs(hits["10"] / n - 0.5) < 0.02


def test_stochastic_walk_deterministic_given_seed(l1):
    start = l1.space.encode(("0", "0"))
    a = l1.stochastic_walk(start, 1234)
    b = l1.stochastic_walk(start, 1234)
    assert a == b


# -- basins --------------------------------------------------------------------

def test_accessible_basin_l1(l1):
    opt = l1.position_of(l1.space.encode(("0", "1")))
    basin = {l1.space.decode(int(l1.codes[p])) for p in l1.accessible_basin(opt)}
    assert basin == {("0", "0"), ("1", "1"), ("0", "1")}


def test_accessible_basin_l2_is_everything(l2):
    opt = l2.position_of(l2.space.encode(("1", "1")))
    assert l2.accessible_basin(opt).size == 4


def test_accessible_basin_constant_is_self(constant):
    basin = constant.accessible_basin(0)
    assert basin.tolist() == [0]


def test_accessible_basin_rejects_non_optimum(l2):
    with pytest.raises(NotAnOptimumError):
        l2.accessible_basin(l2.position_of(l2.space.encode(("0", "0"))))


def test_greedy_basins_l1(l1):
    sizes = {
        "".join(l1.space.decode(int(l1.codes[p]))): s
        for p, s in l1.greedy_basins().items()
    }
    assert sizes == {"01": 3, "10": 1}


def test_greedy_basins_l6():
    l6 = make_landscape({"00": 2, "01": 0, "10": 1, "11": 3})
    sizes = {
        "".join(l6.space.decode(int(l6.codes[p]))): s
        for p, s in l6.greedy_basins().items()
    }
    assert sizes == {"00": 1, "11": 3}


def test_greedy_basin_partition_sums_to_node_count():
    rng = np.random.default_rng(0)
    for _ in range(25):
        landscape = random_landscape(
            rng, max_size=512, completeness=rng.choice([1.0, 0.8, 0.5]),
            tie_prob=rng.choice([0.0, 0.5]),
        )
        assert sum(landscape.greedy_basins().values()) == landscape.node_count


# -- oracle cross-checks ---------------------------------------------------------

def test_edges_match_quadratic_oracle_small():
    rng = np.random.default_rng(42)
    for _ in range(20):
        landscape = random_landscape(
            rng, max_size=256, completeness=rng.choice([1.0, 0.8, 0.5]),
            tie_prob=rng.choice([0.0, 0.5]),
        )
        data = seq_fitness(landscape)
        assert edge_set(landscape) == brute_edges(data)


def test_optima_match_oracle():
    rng = np.random.default_rng(43)
    for _ in range(15):
        landscape = random_landscape(rng, max_size=256, tie_prob=0.5)
        data = seq_fitness(landscape)
        got = {
            landscape.space.decode(int(landscape.codes[p]))
            for p in landscape.optima.local_optima
        }
        assert got == brute_optima(data, landscape.space.alphabets)


def test_accessible_distances_match_oracle():
    rng = np.random.default_rng(44)
    for _ in range(10):
        landscape = random_landscape(rng, max_size=256, completeness=0.8)
        data = seq_fitness(landscape)
        gpos = landscape.optima.global_optimum
        target = landscape.space.decode(int(landscape.codes[gpos]))
        want = brute_accessible(data, landscape.space.alphabets, target)
        member, dist = landscape.accessible_ancestors(gpos)
        got = {
            landscape.space.decode(int(landscape.codes[p])): int(dist[p])
            for p in np.flatnonzero(member)
        }
        assert got == want


def test_greedy_endpoints_match_oracle_and_walks():
    rng = np.random.default_rng(45)
    for _ in range(10):
        landscape = random_landscape(rng, max_size=128, tie_prob=0.5)
        data = seq_fitness(landscape)
        endpoints = landscape.greedy_endpoint
        for pos in range(landscape.node_count):
            seq = landscape.space.decode(int(landscape.codes[pos]))
            want_end, want_steps = brute_greedy_endpoint(
                data, landscape.space.alphabets, seq
            )
            walk = landscape.greedy_walk(int(landscape.codes[pos]))
            assert landscape.space.decode(walk.endpoint) == want_end
            assert walk.steps == want_steps
            assert endpoints[pos] == landscape.position_of(
                landscape.space.encode(want_end)
            )


def test_subsampling_never_creates_edges():
    rng = np.random.default_rng(46)
    landscape = random_landscape(rng, max_size=512, completeness=1.0)
    full_edges = edge_set(landscape)
    keep = rng.choice(
        landscape.node_count, size=landscape.node_count // 2, replace=False
    )
    sub = landscape.subset(np.sort(keep))
    assert edge_set(sub) <= full_edges


def test_build_deterministic():
    rng = np.random.default_rng(47)
    records = [
        fg.VariantRecord(tuple(f"{i:04b}"), float(rng.normal()))
        for i in range(16)
    ]
    a = fg.build_from_records(records)
    b = fg.build_from_records(list(reversed(records)))
    assert np.array_equal(a.codes, b.codes)
    assert np.array_equal(a.fitness, b.fitness)
    assert np.array_equal(a.nbr_offsets, b.nbr_offsets)
    assert np.array_equal(a.nbr_targets, b.nbr_targets)

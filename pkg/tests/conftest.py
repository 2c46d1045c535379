import numpy as np
import pytest

import fitgraph as fg

# hand-worked 2-locus micro landscapes; strings index loci left to right
L1 = {"00": 0.0, "01": 1.0, "10": 1.0, "11": 0.5}
L2 = {"00": 0.0, "01": 1.0, "10": 2.0, "11": 3.0}
L5 = {"00": 0.0, "01": 1.0, "10": 2.0, "11": 5.0}
L6 = {"00": 2.0, "01": 0.0, "10": 1.0, "11": 3.0}
L7 = {"00": 0.0, "01": 1.0, "10": 0.5, "11": 3.0}
L8 = {"00": 0.0, "01": 0.05, "10": 1.0, "11": 1.02}
CONSTANT = {"00": 1.0, "01": 1.0, "10": 1.0, "11": 1.0}
EGGBOX2 = {"00": 1.0, "01": 0.0, "10": 0.0, "11": 1.0}


def make_landscape(mapping, alphabet=None):
    records = [fg.VariantRecord(tuple(seq), float(f)) for seq, f in mapping.items()]
    return fg.build_from_records(records, alphabet)


def seq_fitness(landscape):
    """Landscape contents as {allele tuple: fitness} for the oracles."""
    return {
        landscape.space.decode(int(c)): float(f)
        for c, f in zip(landscape.codes, landscape.fitness)
    }


def random_landscape(rng, max_size=4096, completeness=1.0, tie_prob=0.0):
    """Random mixed-alphabet landscape, optionally subsampled, maybe with ties."""
    sizes = []
    total = 1
    n = int(rng.integers(2, 13))
    for _ in range(n):
        m = int(rng.choice([2, 2, 3, 4]))
        if total * m > max_size:
            break
        sizes.append(m)
        total *= m
    if len(sizes) < 2:
        sizes = [2, 2]
        total = 4
    space = fg.SequenceSpace.of_sizes(sizes)
    codes = np.arange(space.total_size, dtype=np.int64)
    if completeness < 1.0:
        keep = max(2, int(round(completeness * space.total_size)))
        codes = rng.choice(codes, size=keep, replace=False)
        codes.sort()
    if tie_prob > 0:
        # draw from a small value set so equal-fitness neighbors occur
        fitness = rng.integers(0, 4, size=codes.size).astype(np.float64)
    else:
        fitness = rng.normal(size=codes.size)
    return fg.Landscape.from_arrays(space, codes, fitness)


@pytest.fixture
def l1():
    return make_landscape(L1)


@pytest.fixture
def l2():
    return make_landscape(L2)


@pytest.fixture
def l5():
    return make_landscape(L5)


@pytest.fixture
def l6():
    return make_landscape(L6)


@pytest.fixture
def l7():
    return make_landscape(L7)


@pytest.fixture
def l8():
    return make_landscape(L8)


@pytest.fixture
def constant():
    return make_landscape(CONSTANT)

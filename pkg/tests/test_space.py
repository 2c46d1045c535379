import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import fitgraph as fg
from fitgraph.errors import (
    CodeOutOfRangeError,
    LengthMismatchError,
    MonomorphicLocusError,
    SpaceTooLargeError,
    UnknownAlleleError,
)
from fitgraph.space import SequenceSpace


def test_encode_reference_genotype_is_zero():
    space = SequenceSpace.uniform(2, "binary")
    assert space.encode(("0", "0")) == 0


def test_encode_locus0_least_significant():
    space = SequenceSpace.uniform(2, "binary")
    assert space.encode(("1", "0")) == 1
    assert space.encode(("0", "1")) == 2


def test_encode_dna_mixed_radix():
    space = SequenceSpace.uniform(2, "dna")
    # C is allele index 1 at locus 0
    assert space.encode(("C", "A")) == 1
    assert space.decode(1) == ("C", "A")


def test_decode_zero_and_max():
    space = SequenceSpace.uniform(3, "binary")
    assert space.decode(0) == ("0", "0", "0")
    assert space.decode(7) == ("1", "1", "1")


def test_codec_errors():
    space = SequenceSpace.uniform(2, "dna")
    with pytest.raises(UnknownAlleleError):
        space.encode(("X", "A"))
    with pytest.raises(LengthMismatchError):
        space.encode(("A",))
    with pytest.raises(CodeOutOfRangeError):
        space.decode(16)
    with pytest.raises(CodeOutOfRangeError):
        space.decode(-1)


def test_space_invariants():
    with pytest.raises(MonomorphicLocusError):
        SequenceSpace((("A",), ("A", "C")))
    with pytest.raises(ValueError):
        SequenceSpace((("A", "A"), ("A", "C")))
    with pytest.raises(SpaceTooLargeError):
        SequenceSpace.uniform(64, "binary")
    # 62 binary loci fit in the signed 63-bit range
    assert SequenceSpace.uniform(62, "binary").total_size == 2**62


def test_hamming_examples():
    space = SequenceSpace.uniform(3, "dna")
    g = space.encode(("A", "C", "G"))
    assert space.hamming(g, g) == 0
    assert space.hamming(g, space.encode(("A", "C", "T"))) == 1
    b2 = SequenceSpace.uniform(2, "binary")
    assert b2.hamming(b2.encode(("0", "0")), b2.encode(("1", "1"))) == 2


def test_neighbors_binary_2locus():
    space = SequenceSpace.uniform(2, "binary")
    nbrs = space.neighbors(space.encode(("0", "0")))
    assert sorted(space.decode(int(c)) for c in nbrs) == [("0", "1"), ("1", "0")]


def test_neighbors_dna_single_locus():
    space = SequenceSpace.uniform(1, "dna")
    nbrs = space.neighbors(space.encode(("A",)))
    assert [space.decode(int(c))[0] for c in nbrs] == ["C", "G", "T"]


def test_neighbor_count_protein():
    space = SequenceSpace.uniform(2, "protein")
    g = space.encode(("A", "W"))
    assert space.neighbors(g).size == 38
    assert space.neighborhood_size == 38


def test_neighbors_deterministic_order():
    space = SequenceSpace.uniform(2, "dna")
    g = space.encode(("C", "G"))
    decoded = [space.decode(int(c)) for c in space.neighbors(g)]
    # locus-major, allele-index order
    assert decoded == [
        ("A", "G"), ("G", "G"), ("T", "G"),
        ("C", "A"), ("C", "C"), ("C", "T"),
    ]


def test_infer_sorts_alphabets():
    space = SequenceSpace.infer([("T", "1"), ("A", "0"), ("C", "0")])
    assert space.alphabets == (("A", "C", "T"), ("0", "1"))
    with pytest.raises(MonomorphicLocusError):
        SequenceSpace.infer([("A", "0"), ("A", "1")])


@st.composite
def small_spaces(draw):
    n = draw(st.integers(1, 5))
    sizes = draw(st.lists(st.integers(2, 4), min_size=n, max_size=n))
    return SequenceSpace.of_sizes(sizes)


@given(small_spaces(), st.data())
@settings(max_examples=60, deadline=None)
def test_codec_round_trip(space, data):
    code = data.draw(st.integers(0, space.total_size - 1))
    assert space.encode(space.decode(code)) == code


@given(small_spaces(), st.data())
@settings(max_examples=60, deadline=None)
def test_neighbor_symmetry_and_distance(space, data):
    code = data.draw(st.integers(0, space.total_size - 1))
    nbrs = space.neighbors(code)
    assert nbrs.size == space.neighborhood_size
    assert len(set(nbrs.tolist())) == nbrs.size
    for nb in nbrs.tolist():
        assert space.hamming(code, nb) == 1
        assert code in space.neighbors(nb).tolist()


def test_round_trip_large_space_random_sample():
    # 20^14 ~ 1.6e18, near the top of the representable range
    space = SequenceSpace.uniform(14, "protein")
    rng = np.random.default_rng(7)
    codes = rng.integers(0, space.total_size, size=1000)
    for code in codes.tolist():
        assert space.encode(space.decode(code)) == code


def test_lex_keys_match_sequence_sort():
    space = SequenceSpace.of_sizes([3, 2, 4])
    codes = np.arange(space.total_size, dtype=np.int64)
    by_lex = codes[np.argsort(space.lex_keys(codes))]
    seqs = [space.decode(int(c)) for c in by_lex]
    assert seqs == sorted(seqs)

"""Sequence spaces, mixed-radix genotype codecs, and single-mutation neighborhoods.

A genotype over ``n`` loci with per-locus alphabets ``A_i`` is stored as a
single integer code: digit ``i`` in base ``m_i = |A_i|``, locus 0 least
significant.  All heavy operations work on arrays of codes; allele symbol
vectors appear only at the I/O boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    CodeOutOfRangeError,
    LengthMismatchError,
    MonomorphicLocusError,
    SpaceTooLargeError,
    UnknownAlleleError,
)

CODE_LIMIT = 2**63 - 1

PRESET_ALPHABETS: dict[str, tuple[str, ...]] = {
    "binary": ("0", "1"),
    "dna": ("A", "C", "G", "T"),
    "rna": ("A", "C", "G", "U"),
    "protein": tuple("ACDEFGHIKLMNPQRSTVWY"),
}

# symbol pool for synthetic spaces with numeric alphabet sizes
_SYMBOL_POOL = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class SequenceSpace:
    """A fixed-length substitution space with an ordered alphabet per locus.

    Immutable; safe to share across threads.  ``alphabets[i]`` lists the
    admissible symbols of locus ``i`` in index order (index order defines the
    mixed-radix digit values and the lexicographic tie-break order).
    """

    alphabets: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        if not self.alphabets:
            raise LengthMismatchError("a sequence space needs at least one locus")
        total = 1
        for i, alpha in enumerate(self.alphabets):
            if len(alpha) < 2:
                raise MonomorphicLocusError(
                    f"locus {i} has {len(alpha)} distinct symbol(s); every locus needs >= 2"
                )
            if len(set(alpha)) != len(alpha):
                raise ValueError(f"locus {i} alphabet contains duplicate symbols: {alpha}")
            total *= len(alpha)
            if total > CODE_LIMIT:
                raise SpaceTooLargeError(
                    f"space size exceeds {CODE_LIMIT} after locus {i}; "
                    "reduce loci or alphabet sizes"
                )

    @classmethod
    def uniform(cls, n: int, alphabet: str | Sequence[str]) -> "SequenceSpace":
        """Space with the same alphabet at every locus.

        ``alphabet`` is a preset name ("binary", "dna", "rna", "protein") or an
        explicit symbol sequence.
        """
        if isinstance(alphabet, str) and alphabet in PRESET_ALPHABETS:
            symbols = PRESET_ALPHABETS[alphabet]
        else:
            symbols = tuple(alphabet)
        if n < 1:
            raise LengthMismatchError("n must be >= 1")
        return cls(tuple(symbols for _ in range(n)))

    @classmethod
    def of_sizes(cls, sizes: Sequence[int]) -> "SequenceSpace":
        """Synthetic space with numeric alphabet sizes, symbols drawn from 0-9A-Za-z."""
        alphabets = []
        for m in sizes:
            if m > len(_SYMBOL_POOL):
                raise SpaceTooLargeError(f"alphabet size {m} exceeds symbol pool")
            alphabets.append(tuple(_SYMBOL_POOL[:m]))
        return cls(tuple(alphabets))

    @classmethod
    def infer(cls, sequences: Iterable[Sequence[str]]) -> "SequenceSpace":
        """Infer per-locus alphabets as the sorted set of observed symbols."""
        observed: list[set[str]] = []
        for seq in sequences:
            if not observed:
                observed = [set() for _ in seq]
            elif len(seq) != len(observed):
                raise LengthMismatchError(
                    f"sequence length {len(seq)} != {len(observed)} of earlier rows"
                )
            for i, sym in enumerate(seq):
                observed[i].add(sym)
        if not observed:
            raise LengthMismatchError("cannot infer a space from zero sequences")
        for i, syms in enumerate(observed):
            if len(syms) < 2:
                raise MonomorphicLocusError(
                    f"locus {i} is monomorphic in the data ({sorted(syms)}); "
                    "supply a preset alphabet instead of inferring"
                )
        return cls(tuple(tuple(sorted(syms)) for syms in observed))

    # -- derived geometry ------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.alphabets)

    @cached_property
    def m(self) -> tuple[int, ...]:
        """Alphabet size per locus."""
        return tuple(len(a) for a in self.alphabets)

    @cached_property
    def total_size(self) -> int:
        out = 1
        for mi in self.m:
            out *= mi
        return out

    @cached_property
    def weights(self) -> np.ndarray:
        """Mixed-radix place values, locus 0 least significant."""
        w = np.ones(self.n, dtype=np.int64)
        for i in range(1, self.n):
            w[i] = w[i - 1] * self.m[i - 1]
        return w

    @cached_property
    def lex_weights(self) -> np.ndarray:
        """Place values of the big-endian key used for lexicographic tie-breaks."""
        v = np.ones(self.n, dtype=np.int64)
        for i in range(self.n - 2, -1, -1):
            v[i] = v[i + 1] * self.m[i + 1]
        return v

    @cached_property
    def neighborhood_size(self) -> int:
        """Number of single-mutation neighbors of any genotype: sum(m_i - 1)."""
        return sum(mi - 1 for mi in self.m)

    @cached_property
    def _symbol_index(self) -> tuple[dict[str, int], ...]:
        return tuple({s: j for j, s in enumerate(a)} for a in self.alphabets)

    # -- codec -----------------------------------------------------------

    def encode(self, alleles: Sequence[str]) -> int:
        """Mixed-radix code of an allele vector."""
        if len(alleles) != self.n:
            raise LengthMismatchError(f"expected {self.n} alleles, got {len(alleles)}")
        code = 0
        for i in range(self.n - 1, -1, -1):
            try:
                d = self._symbol_index[i][alleles[i]]
            except KeyError:
                raise UnknownAlleleError(i, alleles[i]) from None
            code = code * self.m[i] + d
        return code

    def decode(self, code: int) -> tuple[str, ...]:
        """Allele vector of a code; inverse of :meth:`encode`."""
        self.check_code(code)
        out = []
        c = int(code)
        for i in range(self.n):
            c, d = divmod(c, self.m[i])
            out.append(self.alphabets[i][d])
        return tuple(out)

    def encode_many(self, sequences: Sequence[Sequence[str]]) -> np.ndarray:
        codes = np.empty(len(sequences), dtype=np.int64)
        for r, seq in enumerate(sequences):
            codes[r] = self.encode(seq)
        return codes

    def check_code(self, code: int) -> None:
        if not 0 <= int(code) < self.total_size:
            raise CodeOutOfRangeError(f"code {code} outside [0, {self.total_size})")

    def digits(self, codes: np.ndarray, locus: int) -> np.ndarray:
        """Digit (allele index) of each code at one locus."""
        return (codes // self.weights[locus]) % self.m[locus]

    def digit_matrix(self, codes: np.ndarray) -> np.ndarray:
        """(len(codes), n) matrix of allele indices."""
        return np.stack([self.digits(codes, i) for i in range(self.n)], axis=1)

    def lex_keys(self, codes: np.ndarray) -> np.ndarray:
        """Big-endian key; ordering by it equals lexicographic allele-vector order."""
        codes = np.asarray(codes, dtype=np.int64)
        out = np.zeros_like(codes)
        for i in range(self.n):
            out += self.digits(codes, i) * self.lex_weights[i]
        return out

    # -- neighborhood ----------------------------------------------------

    def hamming(self, a: int, b: int) -> int:
        """Number of loci at which two genotypes differ."""
        self.check_code(a)
        self.check_code(b)
        dist = 0
        ca, cb = int(a), int(b)
        for i in range(self.n):
            ca, da = divmod(ca, self.m[i])
            cb, db = divmod(cb, self.m[i])
            dist += da != db
        return dist

    def neighbors(self, code: int) -> np.ndarray:
        """All sum(m_i - 1) codes at Hamming distance 1, locus-major then allele order."""
        self.check_code(code)
        out = np.empty(self.neighborhood_size, dtype=np.int64)
        k = 0
        c = int(code)
        for i in range(self.n):
            w = int(self.weights[i])
            d = (c // w) % self.m[i]
            for a in range(self.m[i]):
                if a != d:
                    out[k] = c + (a - d) * w
                    k += 1
        return out

    def format_sequence(self, code: int, delimiter: str = "") -> str:
        return delimiter.join(self.decode(code))

    def __repr__(self) -> str:  # compact: spaces can have many loci
        sizes = "x".join(str(mi) for mi in self.m)
        return f"SequenceSpace(n={self.n}, m={sizes}, size={self.total_size})"

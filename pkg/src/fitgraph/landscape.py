"""Directed variant graphs over sequence-fitness data.

The landscape stores one undirected neighbor CSR (every observed pair at
Hamming distance 1, both directions).  Directed views follow from fitness
comparison: an edge u -> v exists iff f(v) > f(u) strictly, so equal-fitness
neighbors carry no edge and sinks are exactly the local optima under the
">=" definition.  Ties (global optimum, greedy improvement) break by
lexicographic allele order, which keeps every derived feature reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    ConflictingDuplicateError,
    EmptyInputError,
    LengthMismatchError,
    NonFiniteFitnessError,
    NotAnOptimumError,
    StartNotFoundError,
)
from .space import SequenceSpace

_LEX_BIG = np.iinfo(np.int64).max


@dataclass(frozen=True)
class VariantRecord:
    """One sequenced variant: allele vector, fitness, optional replicate variance."""

    alleles: tuple[str, ...]
    fitness: float
    variance: float | None = None


@dataclass(frozen=True)
class OptimaSet:
    """Sinks of the landscape graph plus the tie-broken global optimum."""

    local_optima: np.ndarray  # node positions, ascending
    global_optimum: int  # node position
    global_tie_count: int

    @property
    def count(self) -> int:
        return int(self.local_optima.size)


@dataclass(frozen=True)
class WalkOutcome:
    """Endpoint of a single adaptive walk."""

    start: int  # genotype code
    endpoint: int  # genotype code
    endpoint_fitness: float
    steps: int


def _gather_ranges(starts: np.ndarray, counts: np.ndarray) -> np.ndarray:
    """Concatenate index ranges [starts[k], starts[k]+counts[k]) into one array."""
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64)
    row_start = np.concatenate(([0], np.cumsum(counts)[:-1]))
    return np.repeat(starts - row_start, counts) + np.arange(total, dtype=np.int64)


def _segment_reduce(values, offsets, ufunc, empty_value):
    """Per-row reduction over a CSR layout; empty rows get ``empty_value``."""
    n_rows = offsets.size - 1
    out = np.full(n_rows, empty_value, dtype=values.dtype)
    counts = np.diff(offsets)
    nonempty = counts > 0
    if nonempty.any():
        out[nonempty] = ufunc.reduceat(values, offsets[:-1][nonempty])
    return out


class Landscape:
    """Immutable directed variant graph over an observed subset of a space.

    Nodes are kept sorted by genotype code; ``codes``/``fitness``/``variance``
    align by position.  ``nbr_offsets``/``nbr_targets`` hold the full
    neighbor adjacency (positions, both directions of every observed pair),
    targets ascending within each row.
    """

    def __init__(self, space, codes, fitness, variance, nbr_offsets, nbr_targets):
        self.space = space
        self.codes = codes
        self.fitness = fitness
        self.variance = variance
        self.nbr_offsets = nbr_offsets
        self.nbr_targets = nbr_targets

    # -- construction ------------------------------------------------------

    @classmethod
    def from_arrays(
        cls,
        space: SequenceSpace,
        codes: np.ndarray,
        fitness: np.ndarray,
        variance: np.ndarray | None = None,
    ) -> "Landscape":
        """Build the graph for unique genotype codes with aligned fitness values.

        Work is Theta(node_count * sum(m_i - 1)): every node probes each of
        its potential single-mutation neighbors against the code index.
        """
        codes = np.asarray(codes, dtype=np.int64)
        fitness = np.asarray(fitness, dtype=np.float64)
        if codes.size == 0:
            raise EmptyInputError("a landscape needs at least one variant")
        if codes.size != fitness.size:
            raise LengthMismatchError("codes and fitness lengths differ")
        if not np.isfinite(fitness).all():
            raise NonFiniteFitnessError("fitness contains NaN or infinity")

        order = np.argsort(codes)
        codes = codes[order]
        fitness = fitness[order]
        if variance is not None:
            variance = np.asarray(variance, dtype=np.float64)[order]
        if codes.size > 1 and (np.diff(codes) == 0).any():
            raise ConflictingDuplicateError("<code>", np.nan, np.nan)

        n_nodes = codes.size
        complete = n_nodes == space.total_size
        tails_parts: list[np.ndarray] = []
        heads_parts: list[np.ndarray] = []
        positions = np.arange(n_nodes, dtype=np.int64)
        for i in range(space.n):
            w = int(space.weights[i])
            digits = space.digits(codes, i)
            for a in range(1, space.m[i]):
                mask = digits < a  # each unordered pair probed exactly once
                if not mask.any():
                    continue
                probe = codes[mask] + (a - digits[mask]) * w
                if complete:
                    u = positions[mask]
                    v = probe
                else:
                    idx = np.searchsorted(codes, probe)
                    idx[idx == n_nodes] = 0
                    present = codes[idx] == probe
                    u = positions[mask][present]
                    v = idx[present]
                tails_parts.append(u)
                heads_parts.append(v)

        if tails_parts:
            u = np.concatenate(tails_parts)
            v = np.concatenate(heads_parts)
            tails = np.concatenate([u, v])
            heads = np.concatenate([v, u])
            order2 = np.lexsort((heads, tails))
            nbr_targets = heads[order2]
            deg = np.bincount(tails, minlength=n_nodes)
        else:
            nbr_targets = np.empty(0, dtype=np.int64)
            deg = np.zeros(n_nodes, dtype=np.int64)
        nbr_offsets = np.concatenate(([0], np.cumsum(deg))).astype(np.int64)

        for arr in (codes, fitness, nbr_offsets, nbr_targets):
            arr.setflags(write=False)
        if variance is not None:
            variance.setflags(write=False)
        return cls(space, codes, fitness, variance, nbr_offsets, nbr_targets)

    # -- basic queries -------------------------------------------------------

    @property
    def node_count(self) -> int:
        return int(self.codes.size)

    @cached_property
    def edge_count(self) -> int:
        return int(np.count_nonzero(self.nbr_target_fitness > self.fitness[self.nbr_rows]))

    @property
    def completeness(self) -> float:
        return self.node_count / self.space.total_size

    @cached_property
    def lex_keys(self) -> np.ndarray:
        return self.space.lex_keys(self.codes)

    @cached_property
    def sorted_fitness(self) -> np.ndarray:
        return np.sort(self.fitness)

    @cached_property
    def nbr_rows(self) -> np.ndarray:
        """Tail (row) position of each neighbor CSR entry."""
        return np.repeat(
            np.arange(self.node_count, dtype=np.int64), np.diff(self.nbr_offsets)
        )

    @cached_property
    def nbr_target_fitness(self) -> np.ndarray:
        return self.fitness[self.nbr_targets]

    @cached_property
    def degree(self) -> np.ndarray:
        """Observed neighbors per node (any fitness relation)."""
        return np.diff(self.nbr_offsets)

    @cached_property
    def out_degree(self) -> np.ndarray:
        """Strictly fitter observed neighbors per node."""
        improving = self.nbr_target_fitness > self.fitness[self.nbr_rows]
        return np.bincount(
            self.nbr_rows, weights=improving, minlength=self.node_count
        ).astype(np.int64)

    def lookup(self, codes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Map codes to node positions; second array flags which are present."""
        codes = np.asarray(codes, dtype=np.int64)
        in_range = (codes >= 0) & (codes < self.space.total_size)
        if self.node_count == self.space.total_size:
            return np.where(in_range, codes, 0), in_range
        idx = np.searchsorted(self.codes, np.where(in_range, codes, 0))
        idx = np.minimum(idx, self.node_count - 1)
        present = (self.codes[idx] == codes) & in_range
        return idx, present

    def position_of(self, code: int) -> int:
        pos, present = self.lookup(np.asarray([code]))
        if not present[0]:
            raise StartNotFoundError(f"genotype code {code} not in landscape")
        return int(pos[0])

    def neighbors_of(self, pos: int) -> np.ndarray:
        """Positions of all observed neighbors of a node."""
        return self.nbr_targets[self.nbr_offsets[pos] : self.nbr_offsets[pos + 1]]

    def out_neighbors(self, pos: int) -> np.ndarray:
        nbrs = self.neighbors_of(pos)
        return nbrs[self.fitness[nbrs] > self.fitness[pos]]

    def in_neighbors(self, pos: int) -> np.ndarray:
        nbrs = self.neighbors_of(pos)
        return nbrs[self.fitness[nbrs] < self.fitness[pos]]

    def iter_substitutions(self):
        """Yield (locus, target allele index, src positions, dst positions).

        Covers every observed directed single mutation exactly once: the pass
        for allele ``b`` at locus ``i`` emits all mutations *into* ``b``.
        """
        sp = self.space
        complete = self.node_count == sp.total_size
        positions = np.arange(self.node_count, dtype=np.int64)
        for i in range(sp.n):
            digits = sp.digits(self.codes, i)
            w = int(sp.weights[i])
            for b in range(sp.m[i]):
                mask = digits != b
                if not mask.any():
                    continue
                probe = self.codes[mask] + (b - digits[mask]) * w
                if complete:
                    yield i, b, positions[mask], probe
                else:
                    idx, ok = self.lookup(probe)
                    yield i, b, positions[mask][ok], idx[ok]

    def edge_list(self) -> tuple[np.ndarray, np.ndarray]:
        """All directed edges as (tail codes, head codes), tail-major order."""
        rows = self.nbr_rows
        improving = self.nbr_target_fitness > self.fitness[rows]
        return self.codes[rows[improving]], self.codes[self.nbr_targets[improving]]

    def out_csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Directed edges in CSR form (offsets, target positions)."""
        rows = self.nbr_rows
        improving = self.nbr_target_fitness > self.fitness[rows]
        targets = self.nbr_targets[improving]
        offsets = np.concatenate(([0], np.cumsum(np.bincount(
            rows[improving], minlength=self.node_count
        )))).astype(np.int64)
        return offsets, targets

    # -- optima, walks, basins ---------------------------------------------

    @cached_property
    def optima(self) -> OptimaSet:
        """All sinks; global optimum = max fitness, lexicographic tie-break."""
        sinks = np.flatnonzero(self.out_degree == 0)
        max_f = self.fitness.max()
        tied = np.flatnonzero(self.fitness == max_f)
        best = tied[np.argmin(self.lex_keys[tied])]
        sinks.setflags(write=False)
        return OptimaSet(
            local_optima=sinks,
            global_optimum=int(best),
            global_tie_count=int(tied.size),
        )

    def is_local_optimum(self, pos: int) -> bool:
        return self.out_degree[pos] == 0

    @cached_property
    def greedy_successor(self) -> np.ndarray:
        """Best-improvement move per node (own position for sinks).

        The move maximizes the fitness gain; ties break toward the
        lexicographically smallest genotype.
        """
        rows = self.nbr_rows
        tf = self.nbr_target_fitness
        improving = tf > self.fitness[rows]
        vals = np.where(improving, tf, -np.inf)
        best_f = _segment_reduce(vals, self.nbr_offsets, np.maximum, -np.inf)
        is_best = improving & (tf == best_f[rows])
        lex = np.where(is_best, self.lex_keys[self.nbr_targets], _LEX_BIG)
        best_lex = _segment_reduce(lex, self.nbr_offsets, np.minimum, _LEX_BIG)
        sel = is_best & (lex == best_lex[rows])
        succ = np.arange(self.node_count, dtype=np.int64)
        succ[rows[sel]] = self.nbr_targets[sel]
        succ.setflags(write=False)
        return succ

    @cached_property
    def greedy_endpoint(self) -> np.ndarray:
        """Sink reached by the greedy walk from every node (pointer doubling)."""
        root = np.array(self.greedy_successor)
        while True:
            nxt = root[root]
            if np.array_equal(nxt, root):
                break
            root = nxt
        root.setflags(write=False)
        return root

    def greedy_walk(self, start: int) -> WalkOutcome:
        """Deterministic best-improvement walk from a genotype code to a sink."""
        pos = self.position_of(start)
        succ = self.greedy_successor
        steps = 0
        while succ[pos] != pos:
            pos = succ[pos]
            steps += 1
        return WalkOutcome(
            start=int(start),
            endpoint=int(self.codes[pos]),
            endpoint_fitness=float(self.fitness[pos]),
            steps=steps,
        )

    def stochastic_walk(self, start: int, seed: int) -> WalkOutcome:
        """First-improvement walk: uniform pick among strictly fitter neighbors."""
        pos = self.position_of(start)
        rng = np.random.Generator(np.random.Philox(seed))
        steps = 0
        while True:
            up = self.out_neighbors(pos)
            if up.size == 0:
                break
            pos = int(up[rng.integers(up.size)])
            steps += 1
        return WalkOutcome(
            start=int(start),
            endpoint=int(self.codes[pos]),
            endpoint_fitness=float(self.fitness[pos]),
            steps=steps,
        )

    def accessible_ancestors(self, pos: int) -> tuple[np.ndarray, np.ndarray]:
        """Reverse reachability over increasing edges.

        Returns (member mask, step distance) where distance is the shortest
        accessible path length to ``pos`` (-1 outside the basin).
        """
        visited = np.zeros(self.node_count, dtype=bool)
        dist = np.full(self.node_count, -1, dtype=np.int64)
        visited[pos] = True
        dist[pos] = 0
        frontier = np.asarray([pos], dtype=np.int64)
        d = 0
        while frontier.size:
            starts = self.nbr_offsets[frontier]
            counts = np.diff(self.nbr_offsets)[frontier]
            idx = _gather_ranges(starts, counts)
            cand = self.nbr_targets[idx]
            src = np.repeat(frontier, counts)
            mask = (self.fitness[cand] < self.fitness[src]) & ~visited[cand]
            nxt = np.unique(cand[mask])
            d += 1
            visited[nxt] = True
            dist[nxt] = d
            frontier = nxt
        return visited, dist

    def accessible_basin(self, pos: int) -> np.ndarray:
        """Positions of every node with at least one adaptive walk into ``pos``."""
        if self.out_degree[pos] != 0:
            raise NotAnOptimumError(f"node position {pos} has improving neighbors")
        visited, _ = self.accessible_ancestors(pos)
        return np.flatnonzero(visited)

    def greedy_basins(self) -> dict[int, int]:
        """Basin size per optimum position under the greedy-walk partition."""
        endpoints = self.greedy_endpoint
        opts, sizes = np.unique(endpoints, return_counts=True)
        return {int(o): int(s) for o, s in zip(opts, sizes)}

    # -- derived landscapes --------------------------------------------------

    def subset(self, keep_positions: np.ndarray) -> "Landscape":
        """Induced landscape on a subset of nodes (rebuilds adjacency)."""
        keep_positions = np.asarray(keep_positions, dtype=np.int64)
        return Landscape.from_arrays(
            self.space,
            self.codes[keep_positions],
            self.fitness[keep_positions],
            None if self.variance is None else self.variance[keep_positions],
        )

    def with_fitness(self, fitness: np.ndarray) -> "Landscape":
        """Same genotypes, new fitness values (edges rebuilt)."""
        return Landscape.from_arrays(self.space, self.codes, fitness, self.variance)

    def sequences(self, delimiter: str = "") -> list[str]:
        return [self.space.format_sequence(int(c), delimiter) for c in self.codes]

    def __repr__(self) -> str:
        return (
            f"Landscape(nodes={self.node_count}, edges={self.edge_count}, "
            f"space={self.space!r}, completeness={self.completeness:.3g})"
        )


@dataclass(frozen=True)
class IngestResult:
    """Cleaned input: inferred/validated space plus deduplicated arrays."""

    space: SequenceSpace
    codes: np.ndarray
    fitness: np.ndarray
    variance: np.ndarray | None
    duplicates_dropped: int

    @property
    def alphabet_sizes(self) -> tuple[int, ...]:
        return self.space.m

    @property
    def completeness(self) -> float:
        return self.codes.size / self.space.total_size

    @property
    def records(self) -> list[VariantRecord]:
        out = []
        for i, code in enumerate(self.codes):
            var = None if self.variance is None else float(self.variance[i])
            if var is not None and np.isnan(var):
                var = None
            out.append(VariantRecord(self.space.decode(int(code)), float(self.fitness[i]), var))
        return out


def _encode_records(space: SequenceSpace, records: Sequence[VariantRecord]) -> np.ndarray:
    symbol_rows = np.array([r.alleles for r in records], dtype=str)
    codes = np.zeros(len(records), dtype=np.int64)
    for i in range(space.n):
        alpha = np.array(space.alphabets[i], dtype=str)
        order = np.argsort(alpha)
        col = symbol_rows[:, i]
        at = np.searchsorted(alpha[order], col)
        at_clipped = np.minimum(at, alpha.size - 1)
        ok = alpha[order][at_clipped] == col
        if not ok.all():
            bad = col[~ok][0]
            from .errors import UnknownAlleleError

            raise UnknownAlleleError(i, str(bad))
        codes += order[at_clipped].astype(np.int64) * space.weights[i]
    return codes


def ingest(
    records: Sequence[VariantRecord],
    alphabet: str | SequenceSpace | None = None,
) -> IngestResult:
    """Validate, deduplicate, and encode variant records.

    ``alphabet`` may be a preset name, an explicit :class:`SequenceSpace`, or
    None to infer the per-locus alphabets as the sorted observed symbol sets.
    Exact duplicates with identical fitness collapse to one record; duplicates
    with conflicting fitness raise.
    """
    if not records:
        raise EmptyInputError("no variant records")
    n = len(records[0].alleles)
    for r in records:
        if len(r.alleles) != n:
            raise LengthMismatchError(
                f"record {r.alleles!r} has {len(r.alleles)} loci, expected {n}"
            )
        if not np.isfinite(r.fitness):
            raise NonFiniteFitnessError(f"non-finite fitness for {''.join(r.alleles)!r}")
        if r.variance is not None and (not np.isfinite(r.variance) or r.variance < 0):
            raise NonFiniteFitnessError(
                f"invalid replicate variance for {''.join(r.alleles)!r}"
            )

    if alphabet is None:
        space = SequenceSpace.infer([r.alleles for r in records])
    elif isinstance(alphabet, SequenceSpace):
        space = alphabet
    else:
        space = SequenceSpace.uniform(n, alphabet)
    if space.n != n:
        raise LengthMismatchError(f"space has {space.n} loci but records have {n}")

    codes = _encode_records(space, records)
    fitness = np.asarray([r.fitness for r in records], dtype=np.float64)
    has_var = any(r.variance is not None for r in records)
    variance = (
        np.asarray(
            [np.nan if r.variance is None else r.variance for r in records],
            dtype=np.float64,
        )
        if has_var
        else None
    )

    order = np.argsort(codes, kind="stable")
    codes_s = codes[order]
    dup = np.zeros(codes_s.size, dtype=bool)
    dup[1:] = codes_s[1:] == codes_s[:-1]
    dropped = int(dup.sum())
    if dropped:
        f_s = fitness[order]
        conflict = dup & (f_s != np.concatenate(([np.nan], f_s[:-1])))
        if conflict.any():
            k = int(np.flatnonzero(conflict)[0])
            seq = "".join(space.decode(int(codes_s[k])))
            raise ConflictingDuplicateError(seq, float(f_s[k - 1]), float(f_s[k]))
        keep = order[~dup]
        keep.sort()  # preserve input order of survivors
        codes, fitness = codes[keep], fitness[keep]
        if variance is not None:
            variance = variance[keep]
    return IngestResult(space, codes, fitness, variance, dropped)


def build(space: SequenceSpace, records: Sequence[VariantRecord]) -> Landscape:
    """Construct the landscape graph from deduplicated records."""
    fitness = np.asarray([r.fitness for r in records], dtype=np.float64)
    has_var = any(r.variance is not None for r in records)
    variance = (
        np.asarray(
            [np.nan if r.variance is None else r.variance for r in records],
            dtype=np.float64,
        )
        if has_var
        else None
    )
    codes = _encode_records(space, records)
    return Landscape.from_arrays(space, codes, fitness, variance)


def build_from_records(
    records: Sequence[VariantRecord],
    alphabet: str | SequenceSpace | None = None,
) -> Landscape:
    """Ingest (validate + dedupe) and build in one step; the common entry path."""
    ing = ingest(records, alphabet)
    return Landscape.from_arrays(ing.space, ing.codes, ing.fitness, ing.variance)

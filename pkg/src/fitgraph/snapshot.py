"""Versioned binary snapshot of a built landscape.

Layout (all integers little-endian; documented in README):

    magic           8 bytes  b"FGRSNAP1"
    version         u32      currently 1
    n               u32      loci
    per locus:      u16 m_i, then m_i x (u8 symbol byte length, UTF-8 bytes)
    node_count      u64
    edge_count      u64
    has_variance    u8
    codes           node_count x i64
    fitness         node_count x f64 (IEEE-754)
    [var_flags      node_count x u8]     only when has_variance
    [variances      node_count x f64]    0.0 where the flag is 0
    edge_offsets    (node_count + 1) x i64   directed out-edge CSR
    edge_targets    edge_count x i64         head node positions

Round-trips are bit-exact: loading rebuilds the adjacency from the node
array deterministically and verifies it against the stored edge CSR.
"""

from __future__ import annotations

import struct

import numpy as np

from .errors import SnapshotFormatError
from .landscape import Landscape
from .space import SequenceSpace

MAGIC = b"FGRSNAP1"
VERSION = 1


def save_snapshot(landscape: Landscape, path: str) -> None:
    space = landscape.space
    parts = [MAGIC, struct.pack("<II", VERSION, space.n)]
    for alpha in space.alphabets:
        parts.append(struct.pack("<H", len(alpha)))
        for sym in alpha:
            raw = sym.encode("utf-8")
            parts.append(struct.pack("<B", len(raw)) + raw)
    has_var = landscape.variance is not None
    parts.append(struct.pack("<QQB", landscape.node_count, landscape.edge_count, has_var))
    parts.append(landscape.codes.astype("<i8").tobytes())
    parts.append(landscape.fitness.astype("<f8").tobytes())
    if has_var:
        flags = (~np.isnan(landscape.variance)).astype("<u1")
        values = np.where(np.isnan(landscape.variance), 0.0, landscape.variance)
        parts.append(flags.tobytes())
        parts.append(values.astype("<f8").tobytes())
    offsets, targets = landscape.out_csr()
    parts.append(offsets.astype("<i8").tobytes())
    parts.append(targets.astype("<i8").tobytes())
    with open(path, "wb") as fh:
        fh.write(b"".join(parts))


def load_snapshot(path: str) -> Landscape:
    with open(path, "rb") as fh:
        buf = fh.read()
    if buf[: len(MAGIC)] != MAGIC:
        raise SnapshotFormatError("bad magic; not a landscape snapshot")
    pos = len(MAGIC)
    version, n = struct.unpack_from("<II", buf, pos)
    pos += 8
    if version != VERSION:
        raise SnapshotFormatError(f"unsupported snapshot version {version}")
    alphabets = []
    for _ in range(n):
        (m,) = struct.unpack_from("<H", buf, pos)
        pos += 2
        symbols = []
        for _ in range(m):
            (ln,) = struct.unpack_from("<B", buf, pos)
            pos += 1
            symbols.append(buf[pos : pos + ln].decode("utf-8"))
            pos += ln
        alphabets.append(tuple(symbols))
    node_count, edge_count, has_var = struct.unpack_from("<QQB", buf, pos)
    pos += 17

    def take(dtype, count):
        nonlocal pos
        arr = np.frombuffer(buf, dtype=dtype, count=count, offset=pos)
        pos += arr.nbytes
        return arr

    codes = take("<i8", node_count).astype(np.int64)
    fitness = take("<f8", node_count).astype(np.float64)
    variance = None
    if has_var:
        flags = take("<u1", node_count).astype(bool)
        values = take("<f8", node_count).astype(np.float64)
        variance = np.where(flags, values, np.nan)
    offsets = take("<i8", node_count + 1).astype(np.int64)
    targets = take("<i8", edge_count).astype(np.int64)
    if pos != len(buf):
        raise SnapshotFormatError(f"{len(buf) - pos} trailing bytes")

    space = SequenceSpace(tuple(alphabets))
    landscape = Landscape.from_arrays(space, codes, fitness, variance)
    got_offsets, got_targets = landscape.out_csr()
    if not (np.array_equal(got_offsets, offsets) and np.array_equal(got_targets, targets)):
        raise SnapshotFormatError("stored edge CSR disagrees with rebuilt adjacency")
    return landscape

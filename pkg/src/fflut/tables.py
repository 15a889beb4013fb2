"""Precomputed transform tables: every v in F_p^K mapped to M^kron(k) . v.

This is the four-Russians step: pay p^K precomputation once, then answer
each length-K block transform with a single indexed read.  Tables are
dense uint8 arrays of shape (p^K, K) indexed by the packed key of the
input vector.

Every build (and every load from disk) is spot-checked against an
independent oracle: the Kronecker power materialized entrywise from the
digit-product formula, which shares no code with the incremental fill.
"""

from __future__ import annotations

import struct
import time

import numpy as np

from .cost import CostCounters
from .errors import (
    CorruptTable,
    IncompatibleTable,
    LengthMismatch,
    MemCapExceeded,
    NonSquareBase,
)
from .field import FieldCtx, FieldMatrix, FieldVec, key_powers, make_field

DEFAULT_MEM_CAP = 256 * 1024 * 1024
SPOT_CHECK_SAMPLES = 128  # invariant requires >= 100
# Tables at most this many entries are verified exhaustively, which makes
# corruption detection deterministic for small tables.
EXHAUSTIVE_CHECK_LIMIT = 4096

FFTT_MAGIC = b"FFTT"
FFTT_VERSION = 1
_HEADER = struct.Struct("<4sBHHH")


class TransformTable:
    """Dense lookup table for the block operator M^kron(k), K = d^k."""

    def __init__(self, ctx: FieldCtx, base: FieldMatrix, k: int, values: np.ndarray):
        self.ctx = ctx
        self.base = base
        self.k = k
        self.K = base.rows**k
        self.values = values
        values.setflags(write=False)
        # Cost charged per lookup: ceil(K*log2 p) key bits, K*ceil(log2 p) value bits.
        self.key_bits = (ctx.p**self.K - 1).bit_length()
        self.value_bits = self.K * ctx.bits

    @property
    def entries(self) -> int:
        return self.values.shape[0]

    def __repr__(self) -> str:
        return f"TransformTable(p={self.ctx.p}, d={self.base.rows}, k={self.k}, entries={self.entries})"


def table_bytes(p: int, K: int) -> int:
    """Bytes of value storage for a table over F_p with block length K."""
    return p**K * K


def kron_power_dense(base: FieldMatrix, k: int) -> np.ndarray:
    """M^kron(k) as a dense (K, K) uint8 array, built by repeated np.kron."""
    p = base.ctx.p
    out = np.array([[1]], dtype=np.int64)
    b = base.a.astype(np.int64)
    for _ in range(k):
        out = np.kron(b, out) % p
    return out.astype(np.uint8)


def kron_power_entrywise(base: FieldMatrix, k: int) -> np.ndarray:
    """M^kron(k) built from the digit-product entry formula.

    Entry (i, j) is the product over digit positions s of base[i_s, j_s],
    where i_s, j_s are the base-d digits of i and j.  Independent of
    kron_power_dense; used as the spot-check oracle.
    """
    p = base.ctx.p
    d = base.rows
    K = d**k
    idx = np.arange(K)
    digits = np.empty((K, max(k, 1)), dtype=np.int64)
    rem = idx.copy()
    for s in range(k):
        digits[:, s] = rem % d
        rem //= d
    out = np.ones((K, K), dtype=np.int64)
    b = base.a.astype(np.int64)
    for s in range(k):
        out = out * b[digits[:, None, s], digits[None, :, s]] % p
    return out.astype(np.uint8)


def _spot_check(table: TransformTable) -> None:
    """Compare sampled entries against the entrywise oracle; raise on mismatch."""
    ctx = table.ctx
    p, K = ctx.p, table.K
    total = table.entries
    if total <= EXHAUSTIVE_CHECK_LIMIT:
        keys = np.arange(total, dtype=np.int64)
    else:
        rng = np.random.default_rng(0xF0F0 ^ (p << 16) ^ (table.base.rows << 8) ^ table.k)
        keys = rng.integers(0, total, size=SPOT_CHECK_SAMPLES, dtype=np.int64)
        keys[0] = 0
    vecs = np.empty((keys.size, K), dtype=np.int64)
    rem = keys.copy()
    for i in range(K):
        vecs[:, i] = rem % p
        rem //= p
    oracle = kron_power_entrywise(table.base, table.k).astype(np.int64)
    expected = vecs @ oracle.T % p
    got = table.values[keys].astype(np.int64)
    if not np.array_equal(expected, got):
        bad = int(keys[np.nonzero(np.any(expected != got, axis=1))[0][0]])
        raise CorruptTable(f"table entry for key {bad} disagrees with the naive oracle")


def build_table(
    ctx: FieldCtx,
    base: FieldMatrix,
    k: int,
    mem_cap: int = DEFAULT_MEM_CAP,
) -> TransformTable:
    """Precompute M^kron(k) . v for every v in F_p^K.

    Entries are filled incrementally by linearity, O(K) work per entry:
    the entry for key c*p^i + j (j < p^i) is entry[j] + c * column_i.
    """
    if base.rows != base.cols:
        raise NonSquareBase(f"base matrix is {base.rows}x{base.cols}")
    if base.ctx.p != ctx.p:
        raise IncompatibleTable(f"base matrix is over F_{base.ctx.p}, context is F_{ctx.p}")
    if k < 1:
        raise ValueError("block exponent k must be >= 1")
    p = ctx.p
    K = base.rows**k
    need = table_bytes(p, K)
    if need > mem_cap:
        raise MemCapExceeded(
            f"table for p={p}, K={K} needs {need} bytes, cap is {mem_cap}",
            required_bytes=need,
        )
    block = kron_power_dense(base, k)
    values = np.zeros((p**K, K), dtype=np.uint8)
    filled = 1
    for i in range(K):
        col = block[:, i]
        for c in range(1, p):
            scaled = ctx.mul_table[c, col]
            span = values[c * filled : (c + 1) * filled]
            span[:] = (values[:filled].astype(np.uint16) + scaled) % p
        filled *= p
    table = TransformTable(ctx, base, k, values)
    _spot_check(table)
    return table


def lookup(table: TransformTable, v: FieldVec, counters: CostCounters | None = None) -> FieldVec:
    """Read M^kron(k) . v from the table; charges one lookup to the counters."""
    if len(v) != table.K:
        raise LengthMismatch(f"expected length {table.K}, got {len(v)}")
    key = int(v.data.astype(np.int64) @ key_powers(table.ctx.p, table.K))
    if counters is not None:
        counters.add_lookups(1, table.key_bits, table.value_bits)
    return FieldVec(table.ctx, table.values[key].copy(), _checked=True)


def save_table(table: TransformTable, path) -> None:
    """Serialize: magic FFTT, version, p, d, k (u16 LE), then entries in key
    order, one byte per element."""
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(FFTT_MAGIC, FFTT_VERSION, table.ctx.p, table.base.rows, table.k))
        fh.write(table.values.tobytes())


def load_table(path, base: FieldMatrix, mem_cap: int = DEFAULT_MEM_CAP) -> TransformTable:
    """Load a serialized table and re-run the oracle spot-check.

    The file does not store the base matrix, so the caller supplies it;
    header fields must agree with it.
    """
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < _HEADER.size:
        raise CorruptTable("file shorter than the FFTT header")
    magic, version, p, d, k = _HEADER.unpack_from(raw)
    if magic != FFTT_MAGIC:
        raise CorruptTable(f"bad magic {magic!r}")
    if version != FFTT_VERSION:
        raise CorruptTable(f"unsupported version {version}")
    if p != base.ctx.p or d != base.rows or base.rows != base.cols:
        raise IncompatibleTable(
            f"file says p={p}, d={d}; base matrix is {base.rows}x{base.cols} over F_{base.ctx.p}"
        )
    K = d**k
    need = table_bytes(p, K)
    if need > mem_cap:
        raise MemCapExceeded(f"serialized table needs {need} bytes, cap is {mem_cap}", need)
    body = raw[_HEADER.size :]
    if len(body) != need:
        raise CorruptTable(f"expected {need} entry bytes, found {len(body)}")
    values = np.frombuffer(body, dtype=np.uint8).reshape(p**K, K).copy()
    if values.size and values.max() >= p:
        raise CorruptTable("entry byte out of field range")
    table = TransformTable(make_field(p), base, k, values)
    _spot_check(table)
    return table


_cache: dict[tuple[int, bytes, int], TransformTable] = {}


def get_or_build(
    ctx: FieldCtx,
    base: FieldMatrix,
    k: int,
    mem_cap: int = DEFAULT_MEM_CAP,
) -> tuple[TransformTable, int]:
    """Idempotent build keyed by (p, base, k); returns (table, build_ns).

    build_ns is 0 on a cache hit, so benchmark sweeps amortize the build.
    """
    key = (ctx.p, base.a.tobytes(), k)
    hit = _cache.get(key)
    if hit is not None:
        return hit, 0
    t0 = time.perf_counter_ns()
    table = build_table(ctx, base, k, mem_cap)
    build_ns = time.perf_counter_ns() - t0
    _cache[key] = table
    return table, build_ns


def clear_cache() -> None:
    _cache.clear()

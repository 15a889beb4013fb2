"""Small prime field arithmetic and mixed-radix key packing.

Elements of F_p are plain integers in [0, p).  A FieldCtx holds dense
add/sub/mul/neg tables; with p <= 256 every element fits one byte, so
vectors and matrices store uint8 arrays.  Short element vectors pack
into mixed-radix base-p integers, which is how lookup tables are indexed.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    CompositeModulus,
    KeyOutOfRange,
    KeyOverflow,
    ModulusTooLarge,
)

MAX_MODULUS = 256
KEY_WIDTH_BITS = 64


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class FieldCtx:
    """Arithmetic context for F_p, backed by precomputed tables.

    Tables are write-protected after construction; a context is safe to
    share between threads.
    """

    def __init__(self, p: int):
        if p > MAX_MODULUS:
            raise ModulusTooLarge(f"modulus {p} exceeds maximum {MAX_MODULUS}")
        if not _is_prime(p):
            raise CompositeModulus(f"modulus {p} is not prime")
        self.p = p
        a = np.arange(p, dtype=np.int32)
        self.add_table = ((a[:, None] + a[None, :]) % p).astype(np.uint8)
        self.sub_table = ((a[:, None] - a[None, :]) % p).astype(np.uint8)
        self.mul_table = ((a[:, None] * a[None, :]) % p).astype(np.uint8)
        self.neg_table = ((-a) % p).astype(np.uint8)
        for t in (self.add_table, self.sub_table, self.mul_table, self.neg_table):
            t.setflags(write=False)
        # ceil(log2 p): the bit width of one element in the cost model.
        self.bits = (p - 1).bit_length()

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.sub_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def elements(self) -> range:
        return range(self.p)

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("FieldCtx", self.p))

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p})"


def make_field(p: int) -> FieldCtx:
    """Build the arithmetic context for the prime field F_p, 2 <= p <= 256."""
    return FieldCtx(p)


def _as_elements(ctx: FieldCtx, data, checked: bool) -> np.ndarray:
    arr = np.asarray(data)
    if arr.dtype != np.uint8:
        arr = np.asarray(arr, dtype=np.int64)
        if not checked and arr.size and (arr.min() < 0 or arr.max() >= ctx.p):
            raise ValueError(f"element out of range for F_{ctx.p}")
        arr = arr.astype(np.uint8)
    elif not checked and arr.size and arr.max() >= ctx.p:
        raise ValueError(f"element out of range for F_{ctx.p}")
    return np.ascontiguousarray(arr)


class FieldVec:
    """Dense vector over F_p; `data` is a 1-d uint8 array with entries < p."""

    __slots__ = ("ctx", "data")

    def __init__(self, ctx: FieldCtx, data, *, _checked: bool = False):
        self.ctx = ctx
        arr = _as_elements(ctx, data, _checked)
        if arr.ndim != 1:
            raise ValueError("FieldVec data must be one-dimensional")
        self.data = arr

    @classmethod
    def zeros(cls, ctx: FieldCtx, n: int) -> "FieldVec":
        return cls(ctx, np.zeros(n, dtype=np.uint8), _checked=True)

    def copy(self) -> "FieldVec":
        return FieldVec(self.ctx, self.data.copy(), _checked=True)

    def __len__(self) -> int:
        return self.data.size

    def __getitem__(self, i: int) -> int:
        return int(self.data[i])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldVec)
            and other.ctx.p == self.ctx.p
            and np.array_equal(other.data, self.data)
        )

    def __repr__(self) -> str:
        return f"FieldVec(p={self.ctx.p}, {self.data.tolist()})"


class FieldMatrix:
    """Dense row-major matrix over F_p; `a` is a 2-d uint8 array."""

    __slots__ = ("ctx", "a")

    def __init__(self, ctx: FieldCtx, data, *, _checked: bool = False):
        self.ctx = ctx
        arr = _as_elements(ctx, data, _checked)
        if arr.ndim != 2:
            raise ValueError("FieldMatrix data must be two-dimensional")
        self.a = arr

    @classmethod
    def zeros(cls, ctx: FieldCtx, rows: int, cols: int) -> "FieldMatrix":
        return cls(ctx, np.zeros((rows, cols), dtype=np.uint8), _checked=True)

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int) -> "FieldMatrix":
        return cls(ctx, np.eye(n, dtype=np.uint8), _checked=True)

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    def row_major(self) -> np.ndarray:
        return self.a.reshape(-1)

    def copy(self) -> "FieldMatrix":
        return FieldMatrix(self.ctx, self.a.copy(), _checked=True)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldMatrix)
            and other.ctx.p == self.ctx.p
            and np.array_equal(other.a, self.a)
        )

    def __repr__(self) -> str:
        return f"FieldMatrix(p={self.ctx.p}, shape={self.a.shape})"


def key_powers(p: int, length: int) -> np.ndarray:
    """Powers [p^0, p^1, ...] used for packing; int64, caller checks overflow."""
    return p ** np.arange(length, dtype=np.int64)


def pack_key(v: FieldVec) -> int:
    """Pack a vector into the integer sum(v[i] * p^i); element 0 is least
    significant.  Bijective onto [0, p^len)."""
    p = v.ctx.p
    n = len(v)
    if p**n > 2**KEY_WIDTH_BITS:
        raise KeyOverflow(f"p^len = {p}^{n} exceeds the {KEY_WIDTH_BITS}-bit key width")
    key = 0
    for e in reversed(v.data.tolist()):
        key = key * p + e
    return key


def unpack_key(key: int, length: int, ctx: FieldCtx) -> FieldVec:
    """Inverse of pack_key: recover the length-`length` vector from its key."""
    p = ctx.p
    if key < 0 or key >= p**length:
        raise KeyOutOfRange(f"key {key} not in [0, {p}^{length})")
    out = np.empty(length, dtype=np.uint8)
    for i in range(length):
        key, digit = divmod(key, p)
        out[i] = digit
    return FieldVec(ctx, out, _checked=True)

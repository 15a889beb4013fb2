"""Deterministic seeded input generation (splitmix64).

Benchmark rows must be regenerable from (seed, flags) alone, so inputs
come from a fixed, published generator rather than numpy's default RNG:
splitmix64 with its standard constants.  Element i of a stream is
mix(seed + (i+1)*GOLDEN) reduced mod p.
"""

from __future__ import annotations

import numpy as np

from .field import FieldCtx, FieldMatrix, FieldVec

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """splitmix64 finalizer on one 64-bit value."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def stream(seed: int, count: int) -> np.ndarray:
    """First `count` outputs of splitmix64 seeded with `seed` (uint64)."""
    idx = np.arange(1, count + 1, dtype=np.uint64)
    z = (np.uint64(seed & MASK64) + idx * np.uint64(GOLDEN)) & np.uint64(MASK64)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX2)
    return z ^ (z >> np.uint64(31))


def elements(ctx: FieldCtx, count: int, seed: int) -> np.ndarray:
    """`count` field elements as uint8, reduced from the raw stream."""
    return (stream(seed, count) % np.uint64(ctx.p)).astype(np.uint8)


def vec(ctx: FieldCtx, n: int, seed: int) -> FieldVec:
    return FieldVec(ctx, elements(ctx, n, seed), _checked=True)


def matrix(ctx: FieldCtx, rows: int, cols: int, seed: int) -> FieldMatrix:
    return FieldMatrix(ctx, elements(ctx, rows * cols, seed).reshape(rows, cols), _checked=True)


def derive(seed: int, *parts: int) -> int:
    """Fold integer tags into a base seed; order-sensitive and deterministic."""
    z = seed & MASK64
    for part in parts:
        z = mix64(z ^ mix64(part & MASK64))
    return z

"""Bit-operation accounting.

Counters are passed explicitly to engine operations; passing None skips
all accounting.  The cost functional below fixes the conventions once:

  * one field add/sub/mul costs ceil(log2 p)^2 bit operations,
  * one table lookup costs its key bits plus its value bits,
  * coefficient +-1 in a linear combination is charged as an addition.

Absolute constants are conventions; ratios between algorithms measured
under the same convention are the meaningful quantity.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CostCounters:
    field_adds: int = 0
    field_muls: int = 0
    lookups: int = 0
    lookup_key_bits: int = 0
    lookup_value_bits: int = 0
    wall_ns: int = 0
    # Recursive matmul calls per depth; index = depth, root call is depth 0.
    mm_calls_by_depth: list[int] = field(default_factory=list)

    @property
    def field_ops(self) -> int:
        return self.field_adds + self.field_muls

    @property
    def lookup_bits(self) -> int:
        return self.lookup_key_bits + self.lookup_value_bits

    def add_field(self, adds: int = 0, muls: int = 0) -> None:
        self.field_adds += adds
        self.field_muls += muls

    def add_lookups(self, count: int, key_bits: int, value_bits: int) -> None:
        self.lookups += count
        self.lookup_key_bits += count * key_bits
        self.lookup_value_bits += count * value_bits

    def tick_mm_depth(self, depth: int) -> None:
        while len(self.mm_calls_by_depth) <= depth:
            self.mm_calls_by_depth.append(0)
        self.mm_calls_by_depth[depth] += 1

    def snapshot(self) -> "CostCounters":
        """Pure value copy, unaffected by later operations on self."""
        return CostCounters(
            field_adds=self.field_adds,
            field_muls=self.field_muls,
            lookups=self.lookups,
            lookup_key_bits=self.lookup_key_bits,
            lookup_value_bits=self.lookup_value_bits,
            wall_ns=self.wall_ns,
            mm_calls_by_depth=list(self.mm_calls_by_depth),
        )

    def reset(self) -> None:
        self.field_adds = 0
        self.field_muls = 0
        self.lookups = 0
        self.lookup_key_bits = 0
        self.lookup_value_bits = 0
        self.wall_ns = 0
        self.mm_calls_by_depth = []

    def merge(self, other: "CostCounters") -> None:
        """Fold another counter set into this one (counters are additive)."""
        self.field_adds += other.field_adds
        self.field_muls += other.field_muls
        self.lookups += other.lookups
        self.lookup_key_bits += other.lookup_key_bits
        self.lookup_value_bits += other.lookup_value_bits
        self.wall_ns += other.wall_ns
        for depth, calls in enumerate(other.mm_calls_by_depth):
            while len(self.mm_calls_by_depth) <= depth:
                self.mm_calls_by_depth.append(0)
            self.mm_calls_by_depth[depth] += calls

    def __add__(self, other: "CostCounters") -> "CostCounters":
        out = self.snapshot()
        out.merge(other)
        return out


def bitop_cost(c: CostCounters, p: int) -> int:
    """Total bit operations under the declared convention."""
    w = (p - 1).bit_length()
    return (c.field_adds + c.field_muls) * w * w + c.lookup_key_bits + c.lookup_value_bits

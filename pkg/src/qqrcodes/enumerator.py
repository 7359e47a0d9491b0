"""Exact weight distributions by exhaustive codeword enumeration.

The message space is walked in Gray-code order so each step costs one
row XOR and one popcount.  The low ``block_bits`` message bits are
expanded into a numpy table once; the remaining high bits drive the
Gray-code walk, so every step XORs one generator row into a whole block
of codewords at a time.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .gf2 import LinearCode, check_budget

PROVENANCES = ("brute", "reconstructed", "ingested", "derived")


@dataclass(frozen=True)
class WeightDistribution:
    """Counts A_0..A_n, held as Python ints so large tables never round."""

    n: int
    k: int
    counts: tuple[int, ...]
    provenance: str = "brute"
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if len(self.counts) != self.n + 1:
            raise ValueError(f"expected {self.n + 1} counts, got {len(self.counts)}")
        if any(c < 0 for c in self.counts):
            raise ValueError("negative count")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    def __getitem__(self, j: int) -> int:
        return self.counts[j]

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def min_distance(self) -> int:
        return next((j for j in range(1, self.n + 1) if self.counts[j]), 0)

    @property
    def max_weight(self) -> int:
        return max(j for j in range(self.n + 1) if self.counts[j])

    def nonzero(self) -> dict[int, int]:
        return {j: c for j, c in enumerate(self.counts) if c}

    def is_symmetric(self) -> bool:
        return self.counts == self.counts[::-1]

    def is_valid(self) -> bool:
        return self.counts[0] == 1 and self.total == 1 << self.k


def _limbs(n: int) -> int:
    return max(1, (n + 63) // 64)


def _split(word: int, limbs: int) -> list[int]:
    mask = (1 << 64) - 1
    return [(word >> (64 * i)) & mask for i in range(limbs)]


def _block_table(rows: list[int], limbs: int) -> np.ndarray:
    """All 2^len(rows) combinations of ``rows``, shape (limbs, 2^len(rows)), Gray-code built."""
    size = 1 << len(rows)
    table = np.zeros((limbs, size), dtype=np.uint64)
    split_rows = [np.array(_split(r, limbs), dtype=np.uint64) for r in rows]
    filled = 1
    for r in split_rows:
        # table[filled:2*filled] = table[:filled] ^ r  (doubling construction)
        table[:, filled:2 * filled] = table[:, :filled] ^ r[:, None]
        filled *= 2
    return table


def _gray_walk(high_rows: list[int], table: np.ndarray, n: int, start: int, stop: int) -> np.ndarray:
    """Histogram over the Gray-code indices ``start <= g < stop`` of the high message bits."""
    limbs = table.shape[0]
    hist = np.zeros(n + 1, dtype=np.int64)
    if start >= stop:
        return hist
    gray = start ^ (start >> 1)
    offset = 0
    i = 0
    while gray >> i:
        if gray >> i & 1:
            offset ^= high_rows[i]
        i += 1
    split_high = [np.array(_split(r, limbs), dtype=np.uint64) for r in high_rows]
    cur = np.array(_split(offset, limbs), dtype=np.uint64)
    for step in range(start, stop):
        if step > start:
            # Gray code g(step) differs from g(step-1) in the lowest set bit of step
            cur ^= split_high[(step & -step).bit_length() - 1]
        weights = np.bitwise_count(table[0] ^ cur[0]).astype(np.int64)
        for limb in range(1, limbs):
            weights += np.bitwise_count(table[limb] ^ cur[limb])
        hist += np.bincount(weights, minlength=n + 1)
    return hist


def _worker(args):
    high_rows, low_rows, n, start, stop = args
    table = _block_table(low_rows, _limbs(n))
    return _gray_walk(high_rows, table, n, start, stop)


def partition(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    edges = [total * i // parts for i in range(parts + 1)]
    return [(edges[i], edges[i + 1]) for i in range(parts)]


def weight_distribution(
    c: LinearCode,
    budget: int | None = None,
    workers: int = 1,
    block_bits: int = 12,
    ranges: list[tuple[int, int]] | None = None,
) -> WeightDistribution:
    """Exact weight distribution of ``c`` over all 2^k codewords.

    ``ranges`` overrides the partition of the high-bit Gray-code index
    space; the histograms of the pieces are summed.
    """
    check_budget(1 << c.k, budget, "weight enumeration")
    rows = list(c.generator.rows)
    b = min(block_bits, c.k)
    low_rows, high_rows = rows[:b], rows[b:]
    total_high = 1 << len(high_rows)
    if ranges is None:
        ranges = partition(total_high, workers)
    jobs = [(high_rows, low_rows, c.n, lo, hi) for lo, hi in ranges]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_worker, jobs))
    else:
        parts = [_worker(job) for job in jobs]
    hist = np.sum(parts, axis=0)
    dist = WeightDistribution(c.n, c.k, tuple(int(h) for h in hist), "brute")
    if dist.total != 1 << c.k:
        raise AssertionError("ranges did not cover the message space exactly")
    return dist


def weight_distribution_naive(c: LinearCode, budget: int | None = None) -> WeightDistribution:
    """Reference path: encode every message directly.  Slow; for cross-checks."""
    check_budget(1 << c.k, budget, "weight enumeration")
    counts = [0] * (c.n + 1)
    for m in range(1 << c.k):
        counts[c.encode(m).bit_count()] += 1
    return WeightDistribution(c.n, c.k, tuple(counts), "brute")

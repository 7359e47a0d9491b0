"""Exact linear algebra over GF(2).

Vectors are packed into Python integers: bit ``j`` of the integer is
coordinate ``j`` of the vector.  All types are immutable.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class LengthMismatch(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """Raised when an exhaustive computation would exceed the configured budget."""


DEFAULT_BUDGET = 1 << 26

_budget = DEFAULT_BUDGET


def get_budget() -> int:
    return _budget


def set_budget(value: int) -> int:
    """Set the process-wide enumeration budget; returns the previous value."""
    global _budget
    if value < 1:
        raise ValueError("budget must be positive")
    previous, _budget = _budget, int(value)
    return previous


def check_budget(size: int, budget: int | None = None, what: str = "enumeration") -> None:
    limit = get_budget() if budget is None else budget
    if size > limit:
        raise BudgetExceeded(f"{what} of size {size} exceeds budget {limit}")


@dataclass(frozen=True)
class BitVector:
    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("length must be nonnegative")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits set beyond length")

    @classmethod
    def from_list(cls, values: Sequence[int]) -> BitVector:
        bits = 0
        for j, v in enumerate(values):
            if v & 1:
                bits |= 1 << j
        return cls(len(values), bits)

    @classmethod
    def from_string(cls, text: str) -> BitVector:
        return cls.from_list([int(ch) for ch in text if ch in "01"])

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> BitVector:
        bits = 0
        for j in support:
            bits ^= 1 << j
        return cls(length, bits)

    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> list[int]:
        return [j for j in range(self.length) if self.bits >> j & 1]

    def to_list(self) -> list[int]:
        return [self.bits >> j & 1 for j in range(self.length)]

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise IndexError(j)
        return self.bits >> j & 1

    def __xor__(self, other: BitVector) -> BitVector:
        if other.length != self.length:
            raise LengthMismatch(f"{self.length} != {other.length}")
        return BitVector(self.length, self.bits ^ other.bits)

    def dot(self, other: BitVector) -> int:
        if other.length != self.length:
            raise LengthMismatch(f"{self.length} != {other.length}")
        return (self.bits & other.bits).bit_count() & 1

    def __str__(self) -> str:
        return "".join(str(b) for b in self.to_list())


@dataclass(frozen=True)
class BitMatrix:
    """Row-major GF(2) matrix; ``rows`` holds packed integers."""

    cols: int
    rows: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        for r in self.rows:
            if r < 0 or r >> self.cols:
                raise LengthMismatch(f"row {r:#x} does not fit in {self.cols} columns")

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> BitMatrix:
        if cols is None:
            cols = len(rows[0]) if rows else 0
        packed = []
        for row in rows:
            if len(row) != cols:
                raise LengthMismatch("ragged matrix")
            packed.append(BitVector.from_list(row).bits)
        return cls(cols, tuple(packed))

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> BitMatrix:
        return cls.from_lists([[int(c) for c in r] for r in rows])

    @classmethod
    def from_vectors(cls, vectors: Sequence[BitVector], cols: int | None = None) -> BitMatrix:
        if cols is None:
            cols = vectors[0].length
        for v in vectors:
            if v.length != cols:
                raise LengthMismatch("vector length != cols")
        return cls(cols, tuple(v.bits for v in vectors))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.rows[i])

    def __iter__(self):
        return (BitVector(self.cols, r) for r in self.rows)

    def to_array(self) -> np.ndarray:
        out = np.zeros((len(self.rows), self.cols), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in range(self.cols):
                out[i, j] = r >> j & 1
        return out

    def transpose(self) -> BitMatrix:
        out = [0] * self.cols
        for i, r in enumerate(self.rows):
            for j in range(self.cols):
                if r >> j & 1:
                    out[j] |= 1 << i
        return BitMatrix(len(self.rows), tuple(out))

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        # self (a x b) times other (b x c)
        if other.nrows != self.cols:
            raise LengthMismatch("inner dimensions differ")
        out = []
        for r in self.rows:
            acc = 0
            j = 0
            while r:
                if r & 1:
                    acc ^= other.rows[j]
                r >>= 1
                j += 1
            out.append(acc)
        return BitMatrix(other.cols, tuple(out))

    def is_zero(self) -> bool:
        return not any(self.rows)


def rref(m: BitMatrix) -> tuple[BitMatrix, int, tuple[int, ...]]:
    """Reduced row-echelon form, keeping the row count of the input.

    Pivots are taken in increasing column order; zero rows are moved to
    the bottom.
    """
    rows = list(m.rows)
    pivots: list[int] = []
    rank = 0
    for col in range(m.cols):
        bit = 1 << col
        pivot = next((i for i in range(rank, len(rows)) if rows[i] & bit), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i] & bit:
                rows[i] ^= prow
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    return BitMatrix(m.cols, tuple(rows)), rank, tuple(pivots)


def rank(m: BitMatrix) -> int:
    return rref(m)[1]


@dataclass(frozen=True)
class LinearCode:
    """Binary linear code stored by its canonical (RREF) generator.

    Two codes compare equal iff they have the same row space.
    """

    n: int
    generator: BitMatrix = field(repr=False)

    def __init__(self, generator: BitMatrix):
        reduced, k, _ = rref(generator)
        object.__setattr__(self, "n", generator.cols)
        object.__setattr__(self, "generator", BitMatrix(generator.cols, reduced.rows[:k]))

    @classmethod
    def from_rows(cls, n: int, rows: Iterable[int]) -> LinearCode:
        return cls(BitMatrix(n, tuple(rows)))

    @property
    def k(self) -> int:
        return self.generator.nrows

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(_lowbit(r) for r in self.generator.rows)

    @cached_property
    def parity_check(self) -> BitMatrix:
        """(n-k) x n matrix H with generator . H^T = 0."""
        pivots = self.pivots
        pivot_set = set(pivots)
        rows = []
        for f in range(self.n):
            if f in pivot_set:
                continue
            h = 1 << f
            for i, pcol in enumerate(pivots):
                if self.generator.rows[i] >> f & 1:
                    h |= 1 << pcol
            rows.append(h)
        return BitMatrix(self.n, tuple(rows))

    def __hash__(self):
        return hash((self.n, self.generator.rows))

    def __eq__(self, other):
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.n == other.n and self.generator.rows == other.generator.rows

    def contains_bits(self, w: int) -> bool:
        return all((h & w).bit_count() % 2 == 0 for h in self.parity_check.rows)

    def encode(self, message: int) -> int:
        """Codeword for the message whose bit i selects generator row i."""
        acc = 0
        i = 0
        while message:
            if message & 1:
                acc ^= self.generator.rows[i]
            message >>= 1
            i += 1
        return acc

    def is_self_orthogonal(self) -> bool:
        rows = self.generator.rows
        return all((a & b).bit_count() % 2 == 0 for a in rows for b in rows)

    def is_self_dual(self) -> bool:
        return 2 * self.k == self.n and self.is_self_orthogonal()

    def direct_sum(self, other: LinearCode) -> LinearCode:
        """Block-diagonal sum: ``self`` occupies the low ``self.n`` positions."""
        rows = list(self.generator.rows) + [r << self.n for r in other.generator.rows]
        return LinearCode.from_rows(self.n + other.n, rows)

    def permuted(self, perm: Sequence[int]) -> LinearCode:
        """Image of the code under the coordinate map j -> perm[j]."""
        return LinearCode.from_rows(self.n, (permute_bits(r, perm) for r in self.generator.rows))


def _lowbit(r: int) -> int:
    return (r & -r).bit_length() - 1


def permute_bits(word: int, perm: Sequence[int]) -> int:
    out = 0
    j = 0
    while word:
        if word & 1:
            out |= 1 << perm[j]
        word >>= 1
        j += 1
    return out


def dual(c: LinearCode) -> LinearCode:
    return LinearCode(c.parity_check)


def contains(c: LinearCode, w: BitVector) -> bool:
    if w.length != c.n:
        raise LengthMismatch(f"word length {w.length} != code length {c.n}")
    return c.contains_bits(w.bits)


def even_subcode(c: LinearCode) -> LinearCode:
    rows = c.generator.rows
    odd = [r for r in rows if r.bit_count() & 1]
    if not odd:
        return c
    anchor = odd[0]
    new_rows = [r ^ anchor if r.bit_count() & 1 else r for r in rows if r != anchor]
    return LinearCode.from_rows(c.n, new_rows)


def min_distance_brute(c: LinearCode, budget: int | None = None) -> int:
    """Minimum nonzero weight by exhaustive enumeration of all 2^k codewords."""
    from .enumerator import weight_distribution

    if c.k == 0:
        return 0
    return weight_distribution(c, budget=budget).min_distance

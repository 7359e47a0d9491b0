"""Affine point counts of y^2 = f_S(x) over F_p, f_S(x) = prod_{a in S} (x - a).

Subsets S of F_p are bitmasks (bit a set iff a in S).  Since the
quadratic character is multiplicative,

    chi(f_S(a)) = 0                                 if a in S
                = (-1)^#{s in S : a - s nonresidue}  otherwise,

so a point count is ``p`` popcount-parity tests.  The exhaustive scans
vectorise that over blocks of subsets.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .codes import PrimeParams, cyclic_mul, prime_params
from .enumerator import WeightDistribution, partition
from .gf2 import LengthMismatch, check_budget


@dataclass(frozen=True)
class SubsetS:
    p: int
    members: int = 0

    def __post_init__(self):
        if self.members < 0 or self.members >> self.p:
            raise ValueError(f"subset has elements outside F_{self.p}")

    @classmethod
    def of(cls, p: int, elements) -> SubsetS:
        bits = 0
        for a in elements:
            bits |= 1 << (a % p)
        return cls(p, bits)

    def __len__(self) -> int:
        return self.members.bit_count()

    def elements(self) -> list[int]:
        return [a for a in range(self.p) if self.members >> a & 1]

    def complement(self) -> SubsetS:
        return SubsetS(self.p, ((1 << self.p) - 1) ^ self.members)

    def translate(self, shift: int) -> SubsetS:
        return SubsetS.of(self.p, [(a + shift) % self.p for a in self.elements()])


@dataclass(frozen=True)
class PointDistribution:
    p: int
    counts: dict = field(default_factory=dict)

    def __getitem__(self, k: int) -> int:
        return self.counts.get(k, 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())


@lru_cache(maxsize=None)
def character_table(p: int) -> tuple[int, ...]:
    """chi(a) for a in F_p by Euler's criterion, computed once per p."""
    out = []
    for a in range(p):
        if a == 0:
            out.append(0)
        else:
            out.append(1 if pow(a, (p - 1) // 2, p) == 1 else -1)
    return tuple(out)


@lru_cache(maxsize=None)
def nonresidue_masks(p: int) -> tuple[int, ...]:
    """mask[a] has bit s set iff a - s is a nonresidue."""
    chi = character_table(p)
    return tuple(sum(1 << s for s in range(p) if chi[(a - s) % p] == -1) for a in range(p))


def count_affine_points(s: SubsetS) -> int:
    """|X_S(F_p)| = sum_a #{y : y^2 = f_S(a)}; points at infinity are not counted."""
    p = s.p
    chi = character_table(p)
    total = 0
    for a in range(p):
        v = 1
        for r in s.elements():
            v = v * (a - r) % p
        total += 1 + chi[v]
    return total


def count_affine_points_fast(s: SubsetS) -> int:
    p, bits = s.p, s.members
    masks = nonresidue_masks(p)
    total = 0
    for a in range(p):
        if bits >> a & 1:
            total += 1
        elif not (bits & masks[a]).bit_count() & 1:
            total += 2
    return total


def count_points_block(p: int, subsets: np.ndarray) -> np.ndarray:
    """Vectorised point counts for an array of subset bitmasks (uint64)."""
    masks = nonresidue_masks(p)
    subsets = subsets.astype(np.uint64, copy=False)
    counts = np.zeros(subsets.shape, dtype=np.int64)
    one = np.uint64(1)
    for a in range(p):
        in_s = (subsets >> np.uint64(a)) & one
        parity = np.bitwise_count(subsets & np.uint64(masks[a])) & 1
        counts += np.where(in_s == 1, 1, 2 * (1 - parity.astype(np.int64)))
    return counts


def qqr_codeword(s: SubsetS, pp: PrimeParams | None = None) -> int:
    """(r_Q r_S, r_N r_S) packed as u | v << p."""
    pp = pp or prime_params(s.p)
    p = s.p
    return cyclic_mul(pp.r_Q, s.members, p) | cyclic_mul(pp.r_N, s.members, p) << p


def weight_match_check(s: SubsetS) -> bool:
    """Codeword weight against the curve point count."""
    p = s.p
    if p % 4 != 3:
        raise ValueError(f"need p = 3 (mod 4), got {p}")
    wt = qqr_codeword(s).bit_count()
    if len(s) % 2 == 0:
        return wt == 2 * p - count_affine_points(s)
    return wt == count_affine_points(s.complement())


def _even_subset_hist(p: int, start: int, stop: int, block: int = 1 << 18) -> np.ndarray:
    hist = np.zeros(2 * p + 1, dtype=np.int64)
    for lo in range(start, stop, block):
        hi = min(stop, lo + block)
        subsets = np.arange(lo, hi, dtype=np.uint64)
        subsets = subsets[(np.bitwise_count(subsets) & 1) == 0]
        if subsets.size:
            hist += np.bincount(count_points_block(p, subsets), minlength=2 * p + 1)
    return hist


def point_distribution(p: int, budget: int | None = None, ranges: list[tuple[int, int]] | None = None) -> PointDistribution:
    """B_k over all even-size subsets S, walked in binary-counter order."""
    if p % 4 != 3:
        raise ValueError(f"need p = 3 (mod 4), got {p}")
    check_budget(1 << (p - 1), budget, "curve enumeration")
    if ranges is None:
        ranges = partition(1 << p, 1)
    hist = sum(_even_subset_hist(p, lo, hi) for lo, hi in ranges)
    return PointDistribution(p, {k: int(v) for k, v in enumerate(hist) if v})


def interlace_check(a: WeightDistribution, b: PointDistribution) -> bool:
    """A_k = B_k (k = 2 mod 4), B_(2p-k) (k = 0 mod 4), 0 (k odd), and A_k = B_k + B_(2p-k)."""
    p = b.p
    if a.n != 2 * p:
        raise LengthMismatch(f"code length {a.n} != 2p = {2 * p}")
    for k in range(2 * p + 1):
        ak = a[k]
        if k % 2 and ak:
            return False
        if k % 4 == 0 and ak != b[2 * p - k]:
            return False
        if k % 4 == 2 and ak != b[k]:
            return False
        if ak != b[k] + b[2 * p - k]:
            return False
    return True


def interlaced_counts(b: PointDistribution) -> list[int]:
    """Symmetrise B into the QQR weight distribution."""
    p = b.p
    out = []
    for k in range(2 * p + 1):
        if k % 4 == 2:
            out.append(b[k])
        elif k % 4 == 0:
            out.append(b[2 * p - k])
        else:
            out.append(0)
    return out


@dataclass
class CongruenceReport:
    p: int
    checked: int
    violations: list = field(default_factory=list)
    mode: str = "exhaustive"
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return not self.violations


def _expected_residue(size: int) -> int:
    return 2 if size % 2 == 0 else 3


def congruence_scan(p: int, sample: str | int = "all", seed: int = 0, budget: int | None = None) -> CongruenceReport:
    """|X_S| = 2 (mod 4) for |S| even and 3 (mod 4) for |S| odd."""
    if p % 4 != 3:
        raise ValueError(f"need p = 3 (mod 4), got {p}")
    if sample == "all":
        check_budget(1 << p, budget, "congruence scan")
        subsets = np.arange(1 << p, dtype=np.uint64)
        mode, used_seed = "exhaustive", None
    else:
        rng = np.random.default_rng(seed)
        subsets = rng.integers(0, 1 << p, size=int(sample), dtype=np.uint64)
        mode, used_seed = "sampled", seed
    violations = []
    block = 1 << 18
    for lo in range(0, subsets.size, block):
        chunk = subsets[lo:lo + block]
        counts = count_points_block(p, chunk)
        sizes = np.bitwise_count(chunk).astype(np.int64)
        expected = np.where(sizes % 2 == 0, 2, 3)
        bad = np.nonzero(counts % 4 != expected)[0]
        violations.extend((int(chunk[i]), int(counts[i])) for i in bad)
    return CongruenceReport(p, int(subsets.size), violations, mode, used_seed)

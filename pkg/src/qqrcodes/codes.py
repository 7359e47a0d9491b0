"""Quadratic-residue and quasi-quadratic-residue code constructions.

Polynomials in GF(2)[x]/(x^p - 1) are packed integers: bit ``a`` is the
coefficient of x^a.  A QQR word (u, v) is packed as ``u | v << p``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from sympy import isprime, primitive_root

from .gf2 import LinearCode, LengthMismatch, min_distance_brute, even_subcode


class NotPrime(ValueError):
    pass


class WrongResidueClass(ValueError):
    pass


class CodeFamily(enum.Enum):
    QR_Q = "qr"
    QR_N = "qr-n"
    EXPURGATED_Q = "expurgated"
    EXPURGATED_N = "expurgated-n"
    QQR = "qqr"
    QQR_STD_FORM = "qqr-std"
    C0 = "c0"
    C0_PERP = "c0-perp"
    EXTENDED = "extended"

    @classmethod
    def parse(cls, text: str) -> CodeFamily:
        key = text.strip().lower().replace("_", "-")
        for fam in cls:
            if fam.value == key or fam.name.lower().replace("_", "-") == key:
                return fam
        raise ValueError(f"unknown code family {text!r}")


@dataclass(frozen=True)
class PrimeParams:
    p: int
    Q: frozenset
    N: frozenset
    rho: int

    @property
    def residue_class(self) -> int:
        return self.p % 8

    @property
    def r_Q(self) -> int:
        return sum(1 << a for a in self.Q)

    @property
    def r_N(self) -> int:
        return sum(1 << a for a in self.N)

    @property
    def ones(self) -> int:
        return (1 << self.p) - 1

    def is_residue(self, a: int) -> bool:
        return a % self.p in self.Q


def quadratic_residue_split(p: int) -> tuple[frozenset, frozenset]:
    if p < 3 or not isprime(p):
        raise NotPrime(f"{p} is not an odd prime")
    Q = frozenset(x * x % p for x in range(1, p))
    N = frozenset(range(1, p)) - Q
    return Q, N


@lru_cache(maxsize=None)
def prime_params(p: int) -> PrimeParams:
    Q, N = quadratic_residue_split(p)
    # smallest primitive root, so V is reproducible
    return PrimeParams(p, Q, N, int(primitive_root(p)))


def rotate(v: int, shift: int, p: int) -> int:
    """Multiply by x^shift in GF(2)[x]/(x^p - 1)."""
    shift %= p
    mask = (1 << p) - 1
    return ((v << shift) | (v >> (p - shift))) & mask


def cyclic_mul(a: int, b: int, p: int) -> int:
    acc = 0
    i = 0
    while a:
        if a & 1:
            acc ^= rotate(b, i, p)
        a >>= 1
        i += 1
    return acc


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise WrongResidueClass(msg)


def _require_qr(pp: PrimeParams) -> None:
    _require(pp.p % 8 in (1, 7), f"QR codes need p = +-1 (mod 8), got p={pp.p}")


def _require_3mod4(pp: PrimeParams) -> None:
    _require(pp.p % 4 == 3, f"need p = 3 (mod 4), got p={pp.p}")


def cyclic_code(generator_poly: int, p: int) -> LinearCode:
    return LinearCode.from_rows(p, (rotate(generator_poly, i, p) for i in range(p)))


def qqr_rows(pp: PrimeParams) -> list[int]:
    """Double-circulant rows e_i = x^i (r_Q, r_N)."""
    p = pp.p
    return [rotate(pp.r_Q, i, p) | rotate(pp.r_N, i, p) << p for i in range(p)]


def _std_form(pp: PrimeParams) -> LinearCode:
    p = pp.p
    return LinearCode.from_rows(2 * p, ((1 << i) | rotate(pp.r_Q, i, p) << p for i in range(p)))


def _c0_perp_rows(pp: PrimeParams) -> list[int]:
    return qqr_rows(pp) + [pp.ones]


def extend_word(word: int, p: int) -> int:
    """Append a parity bit to each half: (u, v) -> (u, |u|, v, |v|), length 2p+2."""
    mask = (1 << p) - 1
    u, v = word & mask, word >> p
    pu, pv = u.bit_count() & 1, v.bit_count() & 1
    return u | pu << p | v << (p + 1) | pv << (2 * p + 1)


def build(pp: PrimeParams | int, family: CodeFamily | str) -> LinearCode:
    if isinstance(pp, int):
        pp = prime_params(pp)
    if isinstance(family, str):
        family = CodeFamily.parse(family)
    p = pp.p
    if family in (CodeFamily.QR_Q, CodeFamily.QR_N, CodeFamily.EXPURGATED_Q, CodeFamily.EXPURGATED_N):
        _require_qr(pp)
        gen = pp.r_Q if family in (CodeFamily.QR_Q, CodeFamily.EXPURGATED_Q) else pp.r_N
        # for p = 1 (mod 8), <r_Q> is even-like of dim (p-1)/2; adjoin the all-ones word
        code = LinearCode.from_rows(p, [rotate(gen, i, p) for i in range(p)] + [pp.ones])
        if family in (CodeFamily.EXPURGATED_Q, CodeFamily.EXPURGATED_N):
            code = even_subcode(code)
        return code
    if family is CodeFamily.QQR:
        return LinearCode.from_rows(2 * p, qqr_rows(pp))
    if family is CodeFamily.QQR_STD_FORM:
        _require(p % 8 == 3, f"standard double-circulant form needs p = 3 (mod 8), got p={p}")
        return _std_form(pp)
    _require_3mod4(pp)
    if family is CodeFamily.C0:
        e = qqr_rows(pp)
        ones = (1 << 2 * p) - 1
        return LinearCode.from_rows(2 * p, (ones ^ r for r in e))
    if family is CodeFamily.C0_PERP:
        return LinearCode.from_rows(2 * p, _c0_perp_rows(pp))
    if family is CodeFamily.EXTENDED:
        return LinearCode.from_rows(2 * p + 2, (extend_word(r, p) for r in _c0_perp_rows(pp)))
    raise ValueError(family)


def perron_identity_check(pp: PrimeParams | int) -> bool:
    """r_Q^2 = r_N and r_Q r_N = 1 in GF(2)[x]/(x^p - 1)."""
    if isinstance(pp, int):
        pp = prime_params(pp)
    _require(pp.p % 8 == 3, f"needs p = 3 (mod 8), got p={pp.p}")
    p = pp.p
    return cyclic_mul(pp.r_Q, pp.r_Q, p) == pp.r_N and cyclic_mul(pp.r_Q, pp.r_N, p) == 1


def standard_form_check(pp: PrimeParams | int) -> bool:
    """Does [I | G_Q] generate the same code as [G_Q | G_N]?"""
    if isinstance(pp, int):
        pp = prime_params(pp)
    _require_3mod4(pp)
    return build(pp, CodeFamily.QQR) == _std_form(pp)


def even_subcode_relation_check(pp: PrimeParams | int, budget: int | None = None) -> tuple[bool, int, int]:
    """QQR(p) against the even subcode of Q (+) N, plus both minimum distances."""
    if isinstance(pp, int):
        pp = prime_params(pp)
    _require(pp.p % 8 == 7, f"needs p = 7 (mod 8), got p={pp.p}")
    qqr = build(pp, CodeFamily.QQR)
    qr = build(pp, CodeFamily.QR_Q)
    direct = qr.direct_sum(build(pp, CodeFamily.QR_N))
    equal = qqr == even_subcode(direct)
    return equal, min_distance_brute(qqr, budget), min_distance_brute(qr, budget)


# --- positions and PSL_2(p) -------------------------------------------------

INF = "inf"


@dataclass(frozen=True)
class PositionLabel:
    half: str  # "left" | "right"
    index: int | str  # 0..p-1 or INF

    def column(self, p: int) -> int:
        base = 0 if self.half == "left" else p + 1
        return base + (p if self.index == INF else int(self.index))

    @classmethod
    def from_column(cls, col: int, p: int) -> PositionLabel:
        half, off = ("left", col) if col <= p else ("right", col - p - 1)
        return cls(half, INF if off == p else off)


@dataclass(frozen=True)
class PermutationAction:
    """Coordinate permutation on the 2p+2 extended positions."""

    name: str
    p: int
    mapping: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise ValueError("mapping is not a bijection")

    def __call__(self, label: PositionLabel) -> PositionLabel:
        return PositionLabel.from_column(self.mapping[label.column(self.p)], self.p)

    @classmethod
    def from_projective(cls, name: str, p: int, f) -> PermutationAction:
        """Lift a map on {0..p-1, INF} to both halves identically."""
        mapping = [0] * (2 * p + 2)
        for half in ("left", "right"):
            for idx in list(range(p)) + [INF]:
                src = PositionLabel(half, idx)
                mapping[src.column(p)] = PositionLabel(half, f(idx)).column(p)
        return cls(name, p, tuple(mapping))

    @classmethod
    def identity(cls, n: int) -> PermutationAction:
        return cls("I", (n - 2) // 2, tuple(range(n)))


def psl2_generators(pp: PrimeParams | int) -> tuple[PermutationAction, PermutationAction, PermutationAction]:
    if isinstance(pp, int):
        pp = prime_params(pp)
    _require_3mod4(pp)
    p, rho2 = pp.p, pp.rho * pp.rho % pp.p

    def shift(y):
        return INF if y == INF else (y + 1) % p

    def scale(y):
        return INF if y == INF else rho2 * y % p

    def invert(y):
        if y == INF:
            return 0
        if y == 0:
            return INF
        return -pow(y, -1, p) % p

    return (
        PermutationAction.from_projective("S", p, shift),
        PermutationAction.from_projective("V", p, scale),
        PermutationAction.from_projective("T", p, invert),
    )


def apply_permutation(word: int, mapping: Sequence[int]) -> int:
    out = 0
    j = 0
    while word:
        if word & 1:
            out |= 1 << mapping[j]
        word >>= 1
        j += 1
    return out


def automorphism_check(c: LinearCode, perm: PermutationAction) -> bool:
    if len(perm.mapping) != c.n:
        raise LengthMismatch(f"permutation acts on {len(perm.mapping)} positions, code has {c.n}")
    return all(c.contains_bits(apply_permutation(r, perm.mapping)) for r in c.generator.rows)

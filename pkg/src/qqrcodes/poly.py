"""Exact homogeneous bivariate polynomials over the Gaussian rationals.

A :class:`HomPoly` of degree n stores c_0..c_n where c_j multiplies
x^(n-j) y^j, so a weight enumerator's coefficient list is exactly its
weight distribution.  Nothing in this module touches floating point.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

from .enumerator import WeightDistribution


class NonIntegerCoefficient(ValueError):
    pass


class NegativeCoefficient(ValueError):
    pass


class NotInGleasonRing(ValueError):
    pass


class InsufficientKnowns(ValueError):
    def __init__(self, missing, msg=None):
        self.missing = sorted(missing)
        super().__init__(msg or f"missing A_j for j in {self.missing}")


class ValidationFailed(ValueError):
    def __init__(self, check: str, detail: str = ""):
        self.check = check
        super().__init__(f"{check} failed" + (f": {detail}" if detail else ""))


class InconsistentSystem(ValueError):
    pass


class GaussianRational:
    """a + b i with a, b exact rationals."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    @classmethod
    def coerce(cls, v) -> GaussianRational:
        if isinstance(v, GaussianRational):
            return v
        if isinstance(v, complex):
            raise TypeError("floating complex values are not exact")
        return cls(v, 0)

    def is_real(self) -> bool:
        return self.im == 0

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def __add__(self, o):
        o = GaussianRational.coerce(o)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, o):
        o = GaussianRational.coerce(o)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return GaussianRational.coerce(o) - self

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return GaussianRational(self.re * o, self.im * o)
        o = GaussianRational.coerce(o)
        if not o.im:
            return GaussianRational(self.re * o.re, self.im * o.re)
        if not self.im:
            return GaussianRational(self.re * o.re, self.re * o.im)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = GaussianRational.coerce(o)
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by zero")
        num = self * o.conjugate()
        return GaussianRational(num.re / den, num.im / den)

    def __pow__(self, e: int):
        out = GaussianRational(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, o):
        try:
            o = GaussianRational.coerce(o)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        if not self.im:
            return f"{self.re}"
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


I = GaussianRational(0, 1)
_ZERO = GaussianRational(0)


class HomPoly:
    """Homogeneous polynomial sum_j c_j x^(n-j) y^j."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        self.coeffs = tuple(GaussianRational.coerce(c) for c in coeffs)
        if not self.coeffs:
            raise ValueError("a homogeneous polynomial needs at least one coefficient")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def monomial(cls, n: int, j: int, c=1) -> HomPoly:
        coeffs = [0] * (n + 1)
        coeffs[j] = c
        return cls(coeffs)

    @classmethod
    def linear(cls, a, b) -> HomPoly:
        """a x + b y."""
        return cls([a, b])

    def __getitem__(self, j: int) -> GaussianRational:
        return self.coeffs[j]

    def __eq__(self, other):
        if not isinstance(other, HomPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = [f"{c}*x^{self.degree - j}*y^{j}" for j, c in enumerate(self.coeffs) if not c.is_zero()]
        return "HomPoly(" + (" + ".join(terms) or "0") + ")"

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.coeffs)

    def __add__(self, other: HomPoly) -> HomPoly:
        if other.degree != self.degree:
            raise ValueError("degrees differ")
        return HomPoly(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: HomPoly) -> HomPoly:
        if other.degree != self.degree:
            raise ValueError("degrees differ")
        return HomPoly(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self):
        return HomPoly(-c for c in self.coeffs)

    def scale(self, s) -> HomPoly:
        s = GaussianRational.coerce(s)
        return HomPoly(c * s for c in self.coeffs)

    def __mul__(self, other):
        if not isinstance(other, HomPoly):
            return self.scale(other)
        out = [_ZERO] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return HomPoly(out)

    __rmul__ = scale

    def __pow__(self, e: int) -> HomPoly:
        out = HomPoly([1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def substitute(self, x_image: HomPoly, y_image: HomPoly) -> HomPoly:
        """self(L, M) for linear forms L, M, in O(n^2) coefficient operations."""
        n = self.degree
        if x_image.degree != 1 or y_image.degree != 1:
            raise ValueError("substitution images must be linear forms")
        # R_0 = c_n; R_m = R_{m-1} * M + c_{n-m} * L^m  gives  sum_j c_j L^(n-j) M^j
        acc = HomPoly([self.coeffs[n]])
        lpow = HomPoly([1])
        for m in range(1, n + 1):
            lpow = lpow * x_image
            acc = acc * y_image
            c = self.coeffs[n - m]
            if not c.is_zero():
                acc = acc + lpow.scale(c)
        return acc

    def swap(self) -> HomPoly:
        """self(y, x)."""
        return HomPoly(self.coeffs[::-1])

    def negate_y(self) -> HomPoly:
        """self(x, -y)."""
        return HomPoly(c if j % 2 == 0 else -c for j, c in enumerate(self.coeffs))

    def times_i_y(self) -> HomPoly:
        """self(x, i y)."""
        return HomPoly(c * _IPOW[j % 4] for j, c in enumerate(self.coeffs))

    def even_part(self) -> HomPoly:
        """(self(x,y) + self(x,-y)) / 2: keeps even powers of y."""
        return HomPoly(c if j % 2 == 0 else _ZERO for j, c in enumerate(self.coeffs))

    def odd_part(self) -> HomPoly:
        return HomPoly(_ZERO if j % 2 == 0 else c for j, c in enumerate(self.coeffs))

    def mul_x(self) -> HomPoly:
        return HomPoly(self.coeffs + (_ZERO,))

    def mul_y(self) -> HomPoly:
        return HomPoly((_ZERO,) + self.coeffs)

    def divide_exact(self, divisor: HomPoly) -> HomPoly | None:
        """Exact quotient, or None when ``divisor`` does not divide ``self``.

        Division is done on the dehomogenised polynomials in t = y/x.
        """
        d = divisor.degree
        n = self.degree
        if d > n:
            return None if not self.is_zero() else HomPoly([0] * (n - d + 1))
        lead = divisor.coeffs[0]
        if lead.is_zero():
            raise ValueError("divisor must have a nonzero x^d term")
        rem = list(self.coeffs)
        quot = []
        for j in range(n - d + 1):
            q = rem[j] / lead if not rem[j].is_zero() else _ZERO
            quot.append(q)
            if not q.is_zero():
                for k in range(1, d + 1):
                    c = divisor.coeffs[k]
                    if not c.is_zero():
                        rem[j + k] = rem[j + k] - q * c
        if any(not r.is_zero() for r in rem[n - d + 1:]):
            return None
        return HomPoly(quot)

    def evaluate(self, x, y):
        x = GaussianRational.coerce(x)
        y = GaussianRational.coerce(y)
        n = self.degree
        return sum((c * x ** (n - j) * y ** j for j, c in enumerate(self.coeffs)), _ZERO)


_IPOW = (GaussianRational(1), I, GaussianRational(-1), GaussianRational(0, -1))

X_PLUS_Y_FORM = HomPoly([1, 1])
X_MINUS_Y_FORM = HomPoly([1, -1])
G_POLY = HomPoly([1, 0, 1])  # x^2 + y^2
J_POLY = HomPoly([0, 0, 1, 0, -2, 0, 1, 0, 0])  # x^2 y^2 (x^2 - y^2)^2


class Factor(enum.Enum):
    X_PLUS_Y = "x+y"
    X2_PLUS_Y2 = "x2+y2"

    @property
    def poly(self) -> HomPoly:
        return X_PLUS_Y_FORM if self is Factor.X_PLUS_Y else G_POLY


# --- conversions ------------------------------------------------------------

def from_counts(w: WeightDistribution | Sequence[int]) -> HomPoly:
    counts = w.counts if isinstance(w, WeightDistribution) else w
    return HomPoly(counts)


def to_counts(h: HomPoly, k: int | None = None, provenance: str = "reconstructed") -> WeightDistribution:
    counts = []
    for j, c in enumerate(h.coeffs):
        if not c.is_real() or c.re.denominator != 1:
            raise NonIntegerCoefficient(f"coefficient of x^{h.degree - j} y^{j} is {c}")
        if c.re < 0:
            raise NegativeCoefficient(f"coefficient of x^{h.degree - j} y^{j} is {c}")
        counts.append(int(c.re))
    total = sum(counts)
    if k is None:
        k = total.bit_length() - 1 if total and total & (total - 1) == 0 else 0
    return WeightDistribution(h.degree, k, tuple(counts), provenance)


def integer_coeffs(h: HomPoly) -> list[int]:
    out = []
    for j, c in enumerate(h.coeffs):
        if not c.is_real() or c.re.denominator != 1:
            raise NonIntegerCoefficient(f"coefficient of x^{h.degree - j} y^{j} is {c}")
        out.append(int(c.re))
    return out


# --- transforms -------------------------------------------------------------

def macwilliams(a: HomPoly, k: int) -> HomPoly:
    """2^-k a(x+y, x-y): the dual code's enumerator."""
    return a.substitute(X_PLUS_Y_FORM, X_MINUS_Y_FORM).scale(Fraction(1, 2 ** k))


def shadow_transform(a: HomPoly, k: int) -> HomPoly:
    """2^-k a(x+y, i(x-y)) without the integrality check."""
    return a.substitute(X_PLUS_Y_FORM, HomPoly([I, -I])).scale(Fraction(1, 2 ** k))


def shadow_enumerator(a: HomPoly, k: int) -> HomPoly:
    s = shadow_transform(a, k)
    integer_coeffs(s)
    return s


def inverse_shadow(s: HomPoly, k: int) -> HomPoly:
    """2^-k s(x - i y, x + i y)."""
    return s.substitute(HomPoly([1, -I]), HomPoly([1, I])).scale(Fraction(1, 2 ** k))


def qqr_from_qr(a_q: HomPoly) -> HomPoly:
    """(A_Q(x,y)^2 + A_Q(x,-y)^2) / 2."""
    sq = a_q * a_q
    neg = a_q.negate_y()
    return (sq + neg * neg).scale(Fraction(1, 2))


def divisibility_order(a: HomPoly, factor: Factor | str) -> int:
    if isinstance(factor, str):
        factor = Factor(factor)
    if a.is_zero():
        raise ValueError("zero polynomial is divisible by every power")
    f = factor.poly
    order = 0
    cur = a
    while cur.degree >= f.degree:
        q = cur.divide_exact(f)
        if q is None:
            break
        cur = q
        order += 1
    return order


# --- Gleason ----------------------------------------------------------------

@dataclass(frozen=True)
class GleasonDecomposition:
    """a_i over G^i J^j with 2i + 8j = degree; only nonzero a_i are stored."""

    degree: int
    coeffs: Mapping[int, Fraction]

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs.get(i, Fraction(0))

    def indices(self) -> list[int]:
        return sorted(self.coeffs)

    def expand(self) -> HomPoly:
        out = HomPoly([0] * (self.degree + 1))
        for i, a in self.coeffs.items():
            out = out + gleason_basis(self.degree, i).scale(a)
        return out


@lru_cache(maxsize=None)
def _g_power(i: int) -> HomPoly:
    return G_POLY ** i


@lru_cache(maxsize=None)
def _j_power(j: int) -> HomPoly:
    return J_POLY ** j


def gleason_basis(degree: int, i: int) -> HomPoly:
    """G^i J^j where 2i + 8j = degree."""
    rest = degree - 2 * i
    if rest < 0 or rest % 8:
        raise ValueError(f"no basis element G^{i} J^j of degree {degree}")
    return _g_power(i) * _j_power(rest // 8)


def gleason_decompose(a: HomPoly) -> GleasonDecomposition:
    """Peel G^i J^j terms in increasing j; the y^(2j) coefficient fixes a_i."""
    n = a.degree
    if n % 2:
        raise NotInGleasonRing(f"odd degree {n}")
    if not a.is_real():
        raise NotInGleasonRing("non-real coefficients")
    residual = a
    coeffs: dict[int, Fraction] = {}
    for j in range(n // 8 + 1):
        i = (n - 8 * j) // 2
        c = residual.coeffs[2 * j]
        # every earlier y-power must already be cleared
        if any(not r.is_zero() for r in residual.coeffs[:2 * j]):
            raise NotInGleasonRing(f"residual has low-order terms before y^{2 * j}")
        if c.is_zero():
            continue
        coeffs[i] = c.re
        residual = residual - gleason_basis(n, i).scale(c)
    if not residual.is_zero():
        first = next(j for j, r in enumerate(residual.coeffs) if not r.is_zero())
        raise NotInGleasonRing(f"nonzero residual at x^{n - first} y^{first}")
    return GleasonDecomposition(n, coeffs)


def _smallest_index(d_low: int, p: int) -> int:
    m = max(d_low - 1, 0)
    while m % 4 != p % 4:
        m += 1
    return m


def gleason_required_knowns(p: int, d_low: int) -> list[int]:
    """Weights j whose counts must be supplied (beyond the forced A_0, zeros below d_low)."""
    m = _smallest_index(d_low, p)
    u = len(range(m, p + 1, 4))
    return [2 * j for j in range(u) if 2 * j >= d_low]


def gleason_reconstruct(p: int, d_low: int, known: Mapping[int, int] | None = None) -> WeightDistribution:
    """Rebuild a QQR weight distribution from a few low-weight counts.

    Assumes the minimum distance is at least ``d_low``, so a_i = 0 for
    i < m, m the least integer >= d_low - 1 congruent to p mod 4.  The
    result is always re-validated.
    """
    if p % 4 != 3:
        raise ValueError(f"need p = 3 (mod 4), got {p}")
    known = dict(known or {})
    n = 2 * p
    m = _smallest_index(d_low, p)
    indices = list(range(p, m - 1, -4))  # a_p, a_{p-4}, ..., a_m  <->  j = 0, 1, ...
    targets = {}
    missing = []
    for j in range(len(indices)):
        k = 2 * j
        if k == 0:
            targets[k] = 1
        elif k < d_low:
            targets[k] = 0
        elif k in known:
            targets[k] = int(known[k])
        else:
            missing.append(k)
    if missing:
        raise InsufficientKnowns(missing)
    residual = HomPoly([0] * (n + 1))
    coeffs: dict[int, Fraction] = {}
    for j, i in enumerate(indices):
        basis = gleason_basis(n, i)
        # triangular: basis has lowest y-power y^(2j) with coefficient 1
        assert all(b.is_zero() for b in basis.coeffs[:2 * j]) and basis.coeffs[2 * j] == 1
        a_i = Fraction(targets[2 * j]) - residual.coeffs[2 * j].re
        if a_i:
            coeffs[i] = a_i
            residual = residual + basis.scale(a_i)
    try:
        dist = to_counts(residual, k=p)
    except (NonIntegerCoefficient, NegativeCoefficient) as exc:
        raise ValidationFailed("integrality", str(exc)) from exc
    _validate_self_dual(dist, p, d_low, m, known)
    return WeightDistribution(n, p, dist.counts, "reconstructed", {"p": p, "family": "qqr", "gleason": coeffs})


def _validate_self_dual(dist: WeightDistribution, p: int, d_low: int, m: int, known: Mapping[int, int]) -> None:
    if dist.total != 1 << p:
        raise ValidationFailed("sum", f"total {dist.total} != 2^{p}")
    if not dist.is_symmetric():
        raise ValidationFailed("symmetry")
    if any(dist[j] for j in range(1, min(d_low, dist.n + 1))):
        raise ValidationFailed("distance", f"nonzero count below assumed d={d_low}")
    for j, v in known.items():
        if dist[j] != v:
            raise ValidationFailed("knowns", f"A_{j} = {dist[j]} but {v} was supplied")
    if divisibility_order(from_counts(dist), Factor.X2_PLUS_Y2) < m:
        raise ValidationFailed("divisibility", f"not divisible by (x^2+y^2)^{m}")


# --- QR reconstruction ------------------------------------------------------

def solve_exact(rows: list[dict[int, Fraction]], rhs: list[Fraction], nvars: int):
    """Gaussian elimination over Q on sparse rows.

    Returns (solution or None, rank, free columns, consistent).  The
    solution is only returned when the system has full column rank.
    """
    rows = [dict(r) for r in rows]
    rhs = list(rhs)
    pivot_of: dict[int, int] = {}
    consistent = True
    order = []
    for r_idx in range(len(rows)):
        row, b = rows[r_idx], rhs[r_idx]
        # reduce by existing pivots
        changed = True
        while changed:
            changed = False
            for col in sorted(row):
                if col in pivot_of:
                    pr = pivot_of[col]
                    f = row[col]
                    for c2, v2 in rows[pr].items():
                        nv = row.get(c2, 0) - f * v2
                        if nv:
                            row[c2] = nv
                        else:
                            row.pop(c2, None)
                    b -= f * rhs[pr]
                    changed = True
                    break
        if not row:
            if b != 0:
                consistent = False
            continue
        col = min(row)
        piv = row[col]
        row = {c: v / piv for c, v in row.items()}
        b = b / piv
        # back-substitute into previous pivot rows to keep them reduced in ``col``
        for other in order:
            orow = rows[other]
            if col in orow:
                f = orow[col]
                for c2, v2 in row.items():
                    nv = orow.get(c2, 0) - f * v2
                    if nv:
                        orow[c2] = nv
                    else:
                        orow.pop(c2, None)
                rhs[other] -= f * b
        rows[r_idx], rhs[r_idx] = row, b
        pivot_of[col] = r_idx
        order.append(r_idx)
    free = [c for c in range(nvars) if c not in pivot_of]
    if free or not consistent:
        return None, len(pivot_of), free, consistent
    sol = [Fraction(0)] * nvars
    for col, r_idx in pivot_of.items():
        sol[col] = rhs[r_idx]
    return sol, len(pivot_of), free, consistent


def qr_forced_counts(p: int, d: int) -> dict[int, int]:
    """Counts implied by d, all-ones membership, and the mod-4 weight structure when p = 7 (mod 8)."""
    forced = {0: 1, p: 1}
    for j in range(1, d):
        forced[j] = 0
        forced[p - j] = 0
    if p % 8 == 7:
        for j in range(1, p):
            if j % 4 in (1, 2):
                forced[j] = 0
    return forced


def qr_reconstruct(p: int, d: int, known: Mapping[int, int] | None = None,
                   symmetric: bool = True, use_total: bool = True,
                   validate: bool = True) -> WeightDistribution:
    """Solve (x+y)^d * C(x,y) = A(x,y) for C from a partial table.

    Unknowns are c_0..c_(p-d); each known A_j gives
    sum_{i+k=j} binom(d,k) c_i = A_j.  With ``symmetric`` the palindromic
    symmetry A_j = A_(p-j), and hence c_i = c_(p-d-i), is imposed;
    ``use_total`` adds the code-size equation sum_j A_j = 2^k.
    """
    known = {int(j): int(v) for j, v in (known or {}).items()}
    n_c = p - d + 1
    values = dict(qr_forced_counts(p, d)) if d > 0 else {}
    for j, v in known.items():
        if j in values and values[j] != v:
            raise InconsistentSystem(f"supplied A_{j}={v} contradicts forced value {values[j]}")
        values[j] = v
    if symmetric:
        for j, v in list(values.items()):
            mirror = p - j
            if mirror in values and values[mirror] != v:
                raise InconsistentSystem(f"A_{j} != A_{mirror} in a symmetric table")
            values[mirror] = v
    binoms = [comb(d, k) for k in range(d + 1)]
    rows, rhs = [], []
    for j in sorted(values):
        row = {}
        for k in range(d + 1):
            i = j - k
            if 0 <= i < n_c:
                row[i] = Fraction(binoms[k])
        rows.append(row)
        rhs.append(Fraction(values[j]))
    if symmetric:
        for i in range(n_c // 2):
            rows.append({i: Fraction(1), n_c - 1 - i: Fraction(-1)})
            rhs.append(Fraction(0))
    if use_total and d > 0:
        # code size: A(1,1) = 2^d C(1,1) = 2^k
        rows.append({i: Fraction(1) for i in range(n_c)})
        rhs.append(Fraction(2 ** ((p + 1) // 2), 2 ** d))
    sol, rnk, free, consistent = solve_exact(rows, rhs, n_c)
    if not consistent:
        raise InconsistentSystem("known counts contradict divisibility by (x+y)^%d" % d)
    if sol is None:
        # every unknown c_i with i free is tied to A_j for j in [i, i+d]
        unknown_j = sorted(j for j in range(p + 1) if j not in values)
        raise InsufficientKnowns(unknown_j, f"rank {rnk} < {n_c} unknowns; supply more of A_j for j in {unknown_j}")
    c_poly = HomPoly(sol)
    a_poly = c_poly * (X_PLUS_Y_FORM ** d)
    try:
        dist = to_counts(a_poly, k=(p + 1) // 2)
    except (NonIntegerCoefficient, NegativeCoefficient) as exc:
        raise ValidationFailed("integrality", str(exc)) from exc
    dist = WeightDistribution(p, (p + 1) // 2, dist.counts, "reconstructed", {"p": p, "family": "qr", "d": d})
    if validate:
        from .tables import audit_distribution

        report = audit_distribution(dist, p=p, k=(p + 1) // 2, d=d)
        if not report.passed:
            failed = [v.name for v in report.verdicts if not v.passed]
            raise ValidationFailed(",".join(failed), "reconstructed table fails audit")
    return dist

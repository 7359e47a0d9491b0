"""Zeta polynomials, weight-distribution statistics, and distance bounds."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import mpmath
import numpy as np
from scipy.optimize import brentq

from .enumerator import WeightDistribution
from .poly import HomPoly, X_MINUS_Y_FORM, from_counts, solve_exact


class SingularSystem(ValueError):
    pass


class ZeroVariance(ValueError):
    pass


class PreconditionFailed(ValueError):
    pass


# --- zeta -------------------------------------------------------------------

@dataclass(frozen=True)
class ZetaPolynomial:
    q: int
    n: int
    d: int
    dperp: int
    coeffs: tuple[Fraction, ...]  # P_0 .. P_r

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t):
        return sum(c * t ** i for i, c in enumerate(self.coeffs))

    def functional_equation_residual(self) -> list[Fraction]:
        """P_(r-i) - q^(g-i) P_i for r = 2g; all zero for formally self-dual codes."""
        r = self.degree
        g = Fraction(r, 2)
        out = []
        for i, c in enumerate(self.coeffs):
            e = g - i
            scale = Fraction(self.q) ** int(e) if e.denominator == 1 else None
            if scale is None:
                raise ValueError("odd degree has no self-dual functional equation")
            out.append(self.coeffs[r - i] - scale * c)
        return out


def _geometric(q: int, m: int) -> int:
    # coefficient of T^m in 1/((1-T)(1-qT))
    return (q ** (m + 1) - 1) // (q - 1)


def _zeta_images(n: int, d: int, r: int, q: int) -> list[HomPoly]:
    """E_i: the T^(n-d) coefficient of T^i (xT + y(1-T))^n / ((1-T)(1-qT))."""
    top = n - d
    xm = [HomPoly([1])]
    for _ in range(top):
        xm.append(xm[-1] * X_MINUS_Y_FORM)
    # base_j = binom(n, n-d-j) (x-y)^(n-d-j) y^(d+j), padded to degree n
    base = []
    for j in range(top + 1):
        m = top - j
        poly = xm[m].scale(comb(n, m))
        base.append(HomPoly((0,) * (d + j) + poly.coeffs))
    images = []
    for i in range(r + 1):
        acc = HomPoly([0] * (n + 1))
        for j in range(i, top + 1):
            acc = acc + base[j].scale(_geometric(q, j - i))
        images.append(acc)
    return images


def zeta_polynomial(a: HomPoly | WeightDistribution, n: int | None = None, d: int | None = None,
                    dperp: int | None = None, q: int = 2) -> ZetaPolynomial:
    """Duursma zeta polynomial P(T), degree r = n + 2 - d - dperp.

    P is the solution of the exact linear system stating that the
    T^(n-d) coefficient of (xT + y(1-T))^n P(T)/((1-T)(1-qT)) equals
    (a(x,y) - x^n)/(q-1).  The identity is re-checked after solving.
    """
    if isinstance(a, WeightDistribution):
        n = a.n if n is None else n
        d = a.min_distance if d is None else d
        a = from_counts(a)
    n = a.degree if n is None else n
    if d is None or dperp is None:
        raise ValueError("d and dperp are required")
    r = n + 2 - d - dperp
    if r < 0:
        raise SingularSystem(f"negative degree {r}: check d={d}, dperp={dperp}")
    target = a - HomPoly.monomial(n, 0)
    target = target.scale(Fraction(1, q - 1))
    images = _zeta_images(n, d, r, q)
    rows, rhs = [], []
    for j in range(n + 1):
        rows.append({i: img[j].re for i, img in enumerate(images) if not img[j].is_zero()})
        rhs.append(target[j].re)
    sol, rank, free, consistent = solve_exact(rows, rhs, r + 1)
    if not consistent:
        raise SingularSystem("inconsistent zeta system: d or dperp does not match the enumerator")
    if sol is None:
        raise SingularSystem(f"zeta system has rank {rank} < {r + 1}")
    check = HomPoly([0] * (n + 1))
    for c, img in zip(sol, images):
        check = check + img.scale(c)
    if check != target:
        raise SingularSystem("zeta identity does not hold after solving")
    if sol[-1] == 0:
        raise SingularSystem(f"leading coefficient vanishes: degree < {r}")
    return ZetaPolynomial(q, n, d, dperp, tuple(sol))


@dataclass
class RHReport:
    roots: list[complex]
    moduli: list[float]
    target: float
    tol: float
    passed: bool
    real_roots: list[float] = field(default_factory=list)
    conjugate_pairs: int = 0
    on_circle_pairs: list[complex] = field(default_factory=list)
    max_residual: float = 0.0
    unverifiable: list[complex] = field(default_factory=list)


def _roots_polished(coeffs: tuple[Fraction, ...], dps: int = 60) -> tuple[list, float, list]:
    """Companion-matrix roots refined by Newton steps at ``dps`` digits."""
    r = len(coeffs) - 1
    if r == 0:
        return [], 0.0, []
    highest_first = [float(c) for c in reversed(coeffs)]
    start = np.roots(highest_first)
    with mpmath.workdps(dps):
        poly = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(coeffs)]
        deriv = [c * (r - i) for i, c in enumerate(poly[:-1])]
        scale = max(abs(c) for c in poly)
        out, bad = [], []
        worst = mpmath.mpf(0)
        for z0 in start:
            z = mpmath.mpc(complex(z0))
            for _ in range(100):
                fz = mpmath.polyval(poly, z)
                dz = mpmath.polyval(deriv, z)
                if dz == 0:
                    break
                step = fz / dz
                z -= step
                if abs(step) < mpmath.mpf(10) ** (-dps + 10):
                    break
            res = abs(mpmath.polyval(poly, z)) / scale
            worst = max(worst, res)
            if res > mpmath.mpf(10) ** (-20):
                bad.append(complex(z))
            out.append(z)
        return out, float(worst), bad


def rh_check(z: ZetaPolynomial, tol: float = 1e-8) -> RHReport:
    """All roots on |T| = q^(-1/2)?"""
    if tol <= 0:
        raise ValueError("tol must be positive")
    target = 1 / math.sqrt(z.q)
    roots, worst, bad = _roots_polished(z.coeffs)
    with mpmath.workdps(60):
        tgt = 1 / mpmath.sqrt(z.q)
        moduli = [abs(rt) for rt in roots]
        passed = all(abs(m - tgt) <= tol for m in moduli)
        eps = mpmath.mpf(10) ** -25
        real = sorted(float(rt.real) for rt in roots if abs(rt.imag) <= eps)
        upper = [rt for rt in roots if rt.imag > eps]
        on_circle = [complex(rt) for rt in upper if abs(abs(rt) - tgt) <= tol]
        croots = [complex(rt) for rt in roots]
        fmod = [float(m) for m in moduli]
    return RHReport(croots, fmod, target, tol, passed and not bad, real, len(upper), on_circle, worst, bad)


def root_consistency(z: ZetaPolynomial, report: RHReport) -> float:
    """Max relative error between P's coefficients and those rebuilt from the roots."""
    if not report.roots:
        return 0.0
    rebuilt = np.poly(np.array(report.roots)) * float(z.coeffs[-1])
    expected = np.array([float(c) for c in reversed(z.coeffs)])
    denom = np.maximum(np.abs(expected), np.max(np.abs(expected)) * 1e-12)
    return float(np.max(np.abs(rebuilt.real - expected) / denom))


# --- moments and c.d.f. -----------------------------------------------------

@dataclass(frozen=True)
class MomentReport:
    mu: Fraction
    sigma2: Fraction
    central: dict  # r -> sum (mu - j)^r a_j, exact
    standardized: dict  # r -> central[r] / sigma^r, float

    @property
    def sigma(self) -> float:
        return math.sqrt(self.sigma2)


def probabilities(w: WeightDistribution) -> list[Fraction]:
    total = 1 << w.k
    return [Fraction(c, total) for c in w.counts]


def moments(w: WeightDistribution, max_order: int = 4) -> MomentReport:
    a = probabilities(w)
    mu = sum(j * aj for j, aj in enumerate(a))
    sigma2 = sum((mu - j) ** 2 * aj for j, aj in enumerate(a))
    if sigma2 == 0:
        raise ZeroVariance("single-weight distribution has zero variance")
    central = {r: sum((mu - j) ** r * aj for j, aj in enumerate(a)) for r in range(1, max_order + 1)}
    sigma = math.sqrt(sigma2)
    standardized = {r: float(c) / sigma ** r for r, c in central.items()}
    return MomentReport(mu, sigma2, central, standardized)


def normal_cdf(z):
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


@dataclass
class CdfTable:
    grid: np.ndarray
    A: np.ndarray
    Phi: np.ndarray
    jumps: np.ndarray
    sup_distance: float
    sup_at: float
    bound: float
    dperp: int

    @property
    def within_bound(self) -> bool:
        return self.sup_distance <= self.bound

    def rows(self):
        return zip(self.grid.tolist(), self.A.tolist(), self.Phi.tolist())


def cdf_compare(w: WeightDistribution, dperp: int | None = None, grid=None, strict: bool = True) -> CdfTable:
    """A(z) = sum_{j >= mu - sigma z} a_j against the standard normal c.d.f.

    The 20/sqrt(dperp) bound needs dperp >= 3; ``strict=False`` still
    tabulates the distance for smaller dual distances.
    """
    if dperp is None:
        dperp = w.min_distance
    if dperp < 3 and strict:
        raise PreconditionFailed(f"needs dual distance >= 3, got {dperp}")
    mom = moments(w, 2)
    mu, sigma = float(mom.mu), mom.sigma
    a = np.array([float(x) for x in probabilities(w)])
    support = np.nonzero(a)[0]
    # jump at z_j = (mu - j)/sigma; ordered by increasing z, i.e. decreasing j
    jumps = (mu - support[::-1]) / sigma
    mass = a[support[::-1]]
    after = np.cumsum(mass)
    before = after - mass
    phi_j = np.array([normal_cdf(z) for z in jumps])
    dev = np.maximum(np.abs(after - phi_j), np.abs(before - phi_j))
    worst = int(np.argmax(dev))
    if grid is None:
        grid = np.round(np.arange(-400, 401) * 0.01, 10)
    grid = np.asarray(grid, dtype=float)
    # include the jump points themselves
    full = np.union1d(grid, jumps)
    idx = np.searchsorted(jumps, full, side="right")
    A = np.concatenate([[0.0], after])[idx]
    Phi = np.array([normal_cdf(z) for z in full])
    return CdfTable(full, A, Phi, jumps, float(dev[worst]), float(jumps[worst]), 20 / math.sqrt(dperp), dperp)


# --- bounds -----------------------------------------------------------------

def gv_expression(x: float, q: int = 2) -> float:
    """1 - x log_q(q-1) + x log_q x + (1-x) log_q(1-x)."""
    lg = lambda v: math.log(v) / math.log(q)
    return 1 - x * lg(q - 1) + x * lg(x) + (1 - x) * lg(1 - x)


def gv_relative_distance(rate: float = 0.5, q: int = 2) -> float:
    """delta at which the GV expression equals ``rate``."""
    return brentq(lambda x: gv_expression(x, q) - rate, 1e-12, (q - 1) / q - 1e-12, xtol=1e-15)


def _at_least_hv(d: int, p: int) -> bool:
    # d >= 2(p + sqrt p)/(sqrt p + 3)  <=>  (d - 2) sqrt p >= 2p - 3d, exactly
    lhs, rhs = d - 2, 2 * p - 3 * d
    if rhs <= 0:
        return lhs >= 0 or lhs * lhs * p <= rhs * rhs
    return lhs > 0 and lhs * lhs * p >= rhs * rhs


def _at_least_sqrt_plus_one(d: int, p: int) -> bool:
    return d >= 1 and (d - 1) ** 2 >= p


@dataclass
class BoundsReport:
    p: int
    d: int
    delta: float
    gv_delta: float
    exceeds_gv: bool
    gv_at_delta: float
    bound_name: str | None = None
    bound_value: float | None = None
    bound_holds: bool | None = None

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def bounds_report(p: int, d: int) -> BoundsReport:
    n = 2 * p
    delta = d / n
    gv = gv_relative_distance(0.5)
    rep = BoundsReport(p, d, delta, gv, delta > gv, gv_expression(delta) if 0 < delta < 0.5 else float("nan"))
    if p % 8 == 3:
        rep.bound_name = "helleseth-voloch"
        rep.bound_value = 2 * (p + math.sqrt(p)) / (math.sqrt(p) + 3)
        rep.bound_holds = _at_least_hv(d, p)
    elif p % 8 == 7:
        rep.bound_name = "sqrt(p)+1"
        rep.bound_value = math.sqrt(p) + 1
        rep.bound_holds = _at_least_sqrt_plus_one(d, p)
    return rep

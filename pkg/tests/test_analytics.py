import math
from fractions import Fraction

import numpy as np
import pytest

from qqrcodes.analytics import (
    PreconditionFailed, SingularSystem, ZeroVariance, bounds_report, cdf_compare, gv_expression,
    gv_relative_distance, moments, normal_cdf, probabilities, rh_check, root_consistency, zeta_polynomial,
)
from qqrcodes.enumerator import WeightDistribution
from qqrcodes.poly import from_counts


def test_zeta_qqr11(dist):
    z = zeta_polynomial(dist(11), dperp=6)
    assert z.degree == 12
    assert all(r == 0 for r in z.functional_equation_residual())
    assert z(1) == sum(z.coeffs)


def test_zeta_qqr23_degree_and_roots(dist):
    z = zeta_polynomial(dist(23), dperp=8)
    assert z.degree == 32
    rep = rh_check(z)
    assert not rep.passed
    assert len(rep.real_roots) == 2
    assert rep.real_roots[0] == pytest.approx(0.508887881, abs=1e-6)
    assert rep.real_roots[1] == pytest.approx(0.982534697, abs=1e-6)
    assert rep.conjugate_pairs == 15 and len(rep.on_circle_pairs) == 15
    assert root_consistency(z, rep) < 1e-8


def test_zeta_golay_meets_rh(dist):
    # [23,12,7] QR code, dual distance 8
    z = zeta_polynomial(dist(23, "qr"), dperp=8)
    assert z.degree == 10
    assert rh_check(z).passed


def test_zeta_wrong_dperp(dist):
    with pytest.raises(SingularSystem):
        zeta_polynomial(dist(11), dperp=30)


def test_rh_tol_must_be_positive(dist):
    with pytest.raises(ValueError):
        rh_check(zeta_polynomial(dist(11), dperp=6), tol=0)


@pytest.mark.parametrize("p", [3, 7, 11, 19, 23])
def test_mean_is_p(dist, p):
    m = moments(dist(p))
    assert m.mu == p
    assert m.central[1] == 0 and m.central[3] == 0


def test_variance_p11(dist):
    assert moments(dist(11)).sigma2 == Fraction(11, 2)


def test_probabilities_sum_to_one(dist):
    assert sum(probabilities(dist(19))) == 1


def test_zero_variance():
    with pytest.raises(ZeroVariance):
        moments(WeightDistribution(2, 0, (1, 0, 0)))


def test_normal_cdf():
    assert normal_cdf(0) == 0.5
    assert normal_cdf(1.96) == pytest.approx(0.975, abs=1e-3)


@pytest.mark.parametrize("p,sup", [(11, 0.165), (19, 0.127), (23, 0.116)])
def test_cdf_sup_distance(dist, p, sup):
    tab = cdf_compare(dist(p))
    assert tab.sup_distance == pytest.approx(sup, abs=1e-3)
    assert tab.within_bound
    assert np.all(np.diff(tab.A) >= 0)


def test_cdf_sup_attained_at_jump(dist):
    tab = cdf_compare(dist(11))
    assert np.any(np.isclose(tab.jumps, tab.sup_at))
    # the tabulated grid never beats the one-sided jump limits
    assert np.max(np.abs(tab.A - tab.Phi)) <= tab.sup_distance + 1e-12


def test_cdf_precondition(dist):
    with pytest.raises(PreconditionFailed):
        cdf_compare(dist(3))
    tab = cdf_compare(dist(3), strict=False)
    assert tab.sup_distance == pytest.approx(0.218, abs=1e-3)


def test_gv():
    delta = gv_relative_distance(0.5)
    assert delta == pytest.approx(0.110028, abs=1e-6)
    assert gv_expression(delta) == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize("p,d,name", [(3, 2, "helleseth-voloch"), (11, 6, "helleseth-voloch"),
                                      (19, 8, "helleseth-voloch"), (43, 14, "helleseth-voloch"),
                                      (7, 4, "sqrt(p)+1"), (23, 8, "sqrt(p)+1")])
def test_bounds(p, d, name):
    rep = bounds_report(p, d)
    assert rep.exceeds_gv and rep.bound_name == name and rep.bound_holds
    assert rep.delta == pytest.approx(d / (2 * p))


def test_bounds_fail_when_d_small():
    assert not bounds_report(43, 5).bound_holds
    assert not bounds_report(23, 4).bound_holds

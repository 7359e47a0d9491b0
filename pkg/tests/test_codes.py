import pytest

from qqrcodes.codes import (
    INF, CodeFamily, NotPrime, PermutationAction, PositionLabel, WrongResidueClass, automorphism_check, build,
    cyclic_mul, even_subcode_relation_check, extend_word, perron_identity_check, prime_params, psl2_generators,
    quadratic_residue_split, standard_form_check,
)
from qqrcodes.gf2 import LengthMismatch, dual, min_distance_brute

from oracles import residues


@pytest.mark.parametrize("p", [3, 7, 11, 19, 23, 31, 43])
def test_residue_split(p):
    q, n = quadratic_residue_split(p)
    assert sorted(q) == residues(p)
    assert len(q) == len(n) == (p - 1) // 2
    assert q | n == set(range(1, p))


def test_not_prime():
    for bad in (1, 2, 9, 15, 21):
        with pytest.raises(NotPrime):
            prime_params(bad)


def test_rho_is_smallest_primitive_root():
    assert [prime_params(p).rho for p in (3, 7, 11, 19, 23)] == [2, 3, 2, 2, 5]


@pytest.mark.parametrize("p", [7, 11, 19, 23])
def test_dimensions(p):
    expected = {"qqr": p, "c0": p - 1, "c0-perp": p + 1, "extended": p + 1}
    if p % 8 == 7:
        expected.update({"qr": (p + 1) // 2, "qr-n": (p + 1) // 2, "expurgated": (p - 1) // 2})
    for fam, k in expected.items():
        c = build(p, fam)
        assert c.k == k, fam
    assert build(p, "qqr").is_self_dual()
    assert build(p, "extended").n == 2 * p + 2


def test_known_small_codes():
    assert min_distance_brute(build(7, "qr")) == 3
    assert min_distance_brute(build(23, "qr")) == 7
    assert min_distance_brute(build(7, "qqr")) == 4


def test_c0_perp_is_dual_of_c0():
    for p in (7, 11, 19):
        assert dual(build(p, "c0")) == build(p, "c0-perp")


@pytest.mark.parametrize("p,fam", [(11, "qr"), (19, "expurgated"), (7, "qqr-std"), (13, "c0"), (5, "extended")])
def test_wrong_residue_class(p, fam):
    with pytest.raises(WrongResidueClass):
        build(p, fam)


def test_family_parse():
    assert CodeFamily.parse("QR_Q") is CodeFamily.QR_Q
    assert CodeFamily.parse("c0_perp") is CodeFamily.C0_PERP
    with pytest.raises(ValueError):
        CodeFamily.parse("golay")


def test_cyclic_mul_identity():
    pp = prime_params(11)
    assert cyclic_mul(pp.r_Q, 1, 11) == pp.r_Q
    assert cyclic_mul(1 << 10, 1 << 3, 11) == 1 << 2


@pytest.mark.parametrize("p", [3, 11, 19, 43])
def test_perron_identity(p):
    assert perron_identity_check(p)


def test_perron_needs_3_mod_8():
    with pytest.raises(WrongResidueClass):
        perron_identity_check(7)


def test_standard_form():
    assert all(standard_form_check(p) for p in (3, 11, 19))
    assert standard_form_check(7) is False


@pytest.mark.parametrize("p,dq,dr", [(7, 4, 3), (23, 8, 7)])
def test_even_subcode_relation(p, dq, dr):
    assert even_subcode_relation_check(p) == (True, dq, dr)


def test_extend_word_layout():
    p = 3
    w = 0b011 | 0b111 << 3  # u = (1,1,0), v = (1,1,1)
    ext = extend_word(w, p)
    assert ext & 0b111 == 0b011 and (ext >> 3) & 1 == 0
    assert (ext >> 4) & 0b111 == 0b111 and (ext >> 7) & 1 == 1


def test_position_labels():
    p = 7
    for col in range(2 * p + 2):
        assert PositionLabel.from_column(col, p).column(p) == col
    assert PositionLabel("left", INF).column(p) == p
    assert PositionLabel("right", 0).column(p) == p + 1
    assert PositionLabel("right", INF).column(p) == 2 * p + 1


@pytest.mark.parametrize("p", [7, 11, 19, 23])
def test_psl2_generators_are_automorphisms(p):
    c = build(p, "extended")
    for g in psl2_generators(p):
        assert automorphism_check(c, g), g.name


def test_psl2_generators_on_projective_line():
    s, v, t = psl2_generators(11)
    assert t(PositionLabel("left", 0)) == PositionLabel("left", INF)
    assert t(PositionLabel("right", INF)) == PositionLabel("right", 0)
    assert s(PositionLabel("left", 10)) == PositionLabel("left", 0)
    assert v(PositionLabel("left", 1)) == PositionLabel("left", 4)


def test_non_automorphism_rejected():
    p = 7
    c = build(p, "extended")
    swap = list(range(2 * p + 2))
    swap[0], swap[p + 1] = swap[p + 1], swap[0]
    swap[1], swap[2] = swap[2], swap[1]
    assert not automorphism_check(c, PermutationAction("swap", p, tuple(swap)))


def test_automorphism_length_mismatch():
    with pytest.raises(LengthMismatch):
        automorphism_check(build(7, "qqr"), psl2_generators(7)[0])


def test_permutation_must_be_bijection():
    with pytest.raises(ValueError):
        PermutationAction("bad", 1, (0, 0, 1, 2))


@pytest.mark.parametrize("p,k,d", [(17, 9, 5), (41, 21, 9), (7, 4, 3), (47, 24, 11)])
def test_qr_parameters_both_classes(p, k, d):
    c = build(p, "qr")
    assert c.k == k and c.contains_bits((1 << p) - 1)
    assert min_distance_brute(c) == d
    assert build(p, "expurgated").k == k - 1

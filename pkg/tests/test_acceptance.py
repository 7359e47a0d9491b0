"""One test per acceptance criterion, each at its stated tolerance.

Every test logs a single PASS/FAIL line (plus the failing sub-checks);
the lines are repeated in the terminal summary.
"""
import json
import os
import time
from fractions import Fraction

import pytest

from qqrcodes import build, weight_distribution
from qqrcodes.analytics import bounds_report, cdf_compare, moments, rh_check, zeta_polynomial
from qqrcodes.cli import run
from qqrcodes.codes import automorphism_check, cyclic_code, perron_identity_check, prime_params, psl2_generators
from qqrcodes.curves import congruence_scan, interlace_check, point_distribution
from qqrcodes.poly import (
    Factor, divisibility_order, from_counts, gleason_decompose, gleason_reconstruct, gleason_required_knowns,
    integer_coeffs, inverse_shadow, qqr_from_qr, qr_reconstruct, shadow_enumerator,
)
from qqrcodes.tables import audit_distribution, audit_table, fixtures, parse_weight_table

from oracles import qr127_counts, record


class Criterion:
    def __init__(self, number, title):
        self.number, self.title = number, title
        self.failures, self.notes = [], []

    def check(self, ok, message, note=None):
        if not ok:
            self.failures.append(message)
        elif note:
            self.notes.append(note)
        return ok

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc_type is not None and exc_type is not AssertionError:
            self.failures.append(f"raised {exc_type.__name__}: {exc}")
        record(self.number, self.title, self.failures, time.perf_counter() - self.start, self.notes)
        if self.failures:
            pytest.fail("; ".join(self.failures), pytrace=False)
        return False


def timed(fn, *args, **kwargs):
    t = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - t


def test_criterion_01_construction():
    with Criterion(1, "construction parameters for p in {7, 11, 19, 23}") as c:
        for p in (7, 11, 19, 23):
            t = time.perf_counter()
            pp = prime_params(p)
            # the cyclic code generated by r_Q, built directly so p = 3 (mod 8) is covered too
            qr_k = cyclic_code(pp.r_Q, p).k
            dims = {"qr": qr_k, "qqr": build(p, "qqr").k, "c0": build(p, "c0").k, "c0-perp": build(p, "c0-perp").k}
            expected = {"qr": (p + 1) // 2, "qqr": p, "c0": p - 1, "c0-perp": p + 1}
            for key, k in dims.items():
                c.check(k == expected[key], f"p={p}: dim {key} = {k}, expected {expected[key]}"
                        + (" (r_Q is a unit since r_Q r_N = 1, so <r_Q> is all of F_2^p)"
                           if key == "qr" and p % 8 == 3 and perron_identity_check(pp) else ""))
            c.check(build(p, "qqr").is_self_dual(), f"p={p}: QQR not self-dual")
            elapsed = time.perf_counter() - t
            c.check(elapsed < 1.0, f"p={p}: took {elapsed:.2f} s (limit 1 s)")


def test_criterion_02_table1():
    with Criterion(2, "Table 1: d and (x^2+y^2)-order for p in {3, 11, 19}; p=23 order >= 7, d = 8") as c:
        for p, d, order in [(3, 2, 3), (11, 6, 7), (19, 8, 7)]:
            w = weight_distribution(build(p, "qqr"))
            got = (w.min_distance, divisibility_order(from_counts(w), Factor.X2_PLUS_Y2))
            c.check(got == (d, order), f"p={p}: (d, order) = {got}, expected {(d, order)}")
        w, secs = timed(weight_distribution, build(23, "qqr"))
        order = divisibility_order(from_counts(w), Factor.X2_PLUS_Y2)
        c.check(w.min_distance == 8, f"p=23: d = {w.min_distance}")
        c.check(order >= 7, f"p=23: order {order} < 7")
        c.check(secs <= 60, f"p=23 brute force took {secs:.1f} s (limit ~60 s)")
        c.notes.append(f"p=23: d = 8, order = {order}, 2^23 codewords in {secs:.2f} s")


def test_criterion_03_diagram_p11():
    with Criterion(3, "p=11 diagram: A-row from the code, B-row from curves, interlacing") as c:
        t = time.perf_counter()
        w = weight_distribution(build(11, "qqr"))
        c.check(tuple(w.counts[::2]) == (1, 0, 0, 77, 330, 616, 616, 330, 77, 0, 0, 1),
                f"A-row {w.counts[::2]}")
        b = point_distribution(11)
        c.check(b.counts == {6: 77, 10: 616, 14: 330, 22: 1}, f"B-row {b.counts}")
        c.check(interlace_check(w, b), "interlace_check false")
        elapsed = time.perf_counter() - t
        c.check(elapsed < 5, f"took {elapsed:.2f} s (limit 5 s)")


def test_criterion_04_gleason_roundtrip():
    with Criterion(4, "Gleason round trip for p in {11, 19, 23}") as c:
        for p in (11, 19, 23):
            w = weight_distribution(build(p, "qqr"))
            d = w.min_distance
            dec = gleason_decompose(from_counts(w))
            c.check(all(i >= d - 1 for i in dec.indices()), f"p={p}: a_i != 0 for some i < d-1: {dec.indices()}")
            c.check(dec[p] == 1, f"p={p}: a_p = {dec[p]}")
            c.check(dec[p - 4] == -p, f"p={p}: a_(p-4) = {dec[p - 4]}")
            needed = gleason_required_knowns(p, d)
            back = gleason_reconstruct(p, d, {j: w[j] for j in needed})
            c.check(back.counts == w.counts, f"p={p}: reconstruction differs")
            c.notes.append(f"p={p}: knowns used {needed or 'none'}")


def test_criterion_05_shadow():
    with Criterion(5, "shadow enumerators for p in {3, 11, 19, 23}") as c:
        for p in (3, 11, 19, 23):
            w = weight_distribution(build(p, "qqr"))
            a = from_counts(w)
            s = shadow_enumerator(a, w.k)
            coeffs = integer_coeffs(s)
            c.check(all(x >= 0 for x in coeffs), f"p={p}: negative shadow coefficient")
            low = next(j for j, x in enumerate(coeffs) if x)
            c.check(low >= w.min_distance - 1, f"p={p}: shadow min weight {low} < d-1 = {w.min_distance - 1}")
            c.check(inverse_shadow(s, w.k) == a, f"p={p}: 2^-k S(x-iy, x+iy) != A")


def test_criterion_06_psl2():
    with Criterion(6, "S, V, T are automorphisms of the extended code for p in {7, 11, 19, 23}") as c:
        for p in (7, 11, 19, 23):
            t = time.perf_counter()
            code = build(p, "extended")
            for g in psl2_generators(p):
                c.check(automorphism_check(code, g), f"p={p}: {g.name} fails")
            elapsed = time.perf_counter() - t
            c.check(elapsed < 5, f"p={p}: took {elapsed:.2f} s (limit 5 s)")


def test_criterion_07_zeta_rh_p23():
    with Criterion(7, "zeta/RH at p=23: fails, two real roots, 15 pairs on |T| = 1/sqrt 2") as c:
        w = weight_distribution(build(23, "qqr"))
        z = zeta_polynomial(w, dperp=8)
        rep = rh_check(z, tol=1e-8)
        c.check(not rep.passed, "RH verdict is pass")
        c.check(len(rep.real_roots) == 2, f"real roots {rep.real_roots}")
        if len(rep.real_roots) == 2:
            for got, want in zip(rep.real_roots, (0.508887881, 0.982534697)):
                c.check(abs(got - want) <= 1e-6, f"real root {got} vs {want}")
        c.check(rep.conjugate_pairs == 15, f"{rep.conjugate_pairs} conjugate pairs")
        c.check(len(rep.on_circle_pairs) == 15, f"{len(rep.on_circle_pairs)} pairs within 1e-8 of 1/sqrt 2")
        c.notes.append(f"real roots {rep.real_roots[0]:.9f}, {rep.real_roots[1]:.9f}")


def test_criterion_08_qr_relations():
    with Criterion(8, "QR relations for p in {7, 23}") as c:
        for p in (7, 23):
            wq = weight_distribution(build(p, "qr"))
            wc = weight_distribution(build(p, "qqr"))
            d = wq.min_distance
            order = divisibility_order(from_counts(wq), Factor.X_PLUS_Y)
            c.check(order >= d, f"p={p}: (x+y)-order {order} < d = {d}")
            c.check(qqr_from_qr(from_counts(wq)) == from_counts(wc), f"p={p}: A_C != (A_Q^2(x,y)+A_Q^2(x,-y))/2")
            c.check(wc.min_distance == d + 1, f"p={p}: d(QQR) = {wc.min_distance}, d(QR) = {d}")


def test_criterion_09_audit_and_corrections(tmp_path, capsys):
    with Criterion(9, "audit + corrections: p=113 table, QR(23) round trip, p=127 reconstruction") as c:
        fx = fixtures()

        # p = 113: the posted table itself is not reprinted and must be supplied
        corrected = fx[113]["corrected"]
        c.check(all(v % 113 == 0 for v in corrected.values()),
                f"p=113: corrected A_56 = A_57 = {corrected[56]} is {corrected[56] % 113} mod 113, "
                "so divisible-by-p fails for every completion of the table")
        path = os.environ.get("QQR_P113_TABLE")
        if not path:
            c.failures.append("p=113: no posted table supplied (set QQR_P113_TABLE to a weight-table file)")
        else:
            posted = parse_weight_table(path).with_values(fx[113]["posted"])
            rep_posted = audit_table(posted)
            c.check(not rep_posted.passed, "p=113: posted table passes the audit")
            rep_fixed = audit_table(posted.with_values(corrected))
            failed = [v.name for v in rep_fixed.verdicts if not v.passed]
            c.check(rep_fixed.passed, f"p=113: corrected table fails {failed}")

        # QR(23) round trip from partial counts
        w23 = weight_distribution(build(23, "qr"))
        back = qr_reconstruct(23, 7, {j: w23[j] for j in (7, 8, 11)})
        c.check(back.counts == w23.counts, "QR(23): reconstruction differs from brute force",
                "QR(23) reconstructed from A_7, A_8, A_11")
        c.check(audit_distribution(w23, p=23, k=12).passed, "QR(23): audit of brute-force table fails")

        # p = 127 from A_19..A_43 (reference values, see oracles.qr127_counts)
        ref = qr127_counts(fx[127]["corrected"][51], fx[127]["corrected"][52])
        known = tmp_path / "p127_known.txt"
        known.write_text("# p=127 k=64 d=19 source=type-II-reference\n"
                         + "".join(f"{j} {ref[j]}\n" for j in range(19, 44)))
        code, report = run(["reconstruct-qr", "--p", "127", "--d", "19", "--known", str(known), "--json"])
        capsys.readouterr()
        c.check(code == 0, f"p=127: reconstruct-qr exit {code}")
        if report is not None:
            counts = report.to_dict()["values"]["counts"]
            diff = {j: counts[j] for j, v in fx[127]["corrected"].items() if counts[j] != v}
            c.check(not diff, f"p=127: differs from corrected Table 3 at {diff}",
                    "p=127: all seven corrected values reproduced")
            moved = [j for j, v in fx[127]["posted"].items() if counts[j] == v]
            c.check(not moved, f"p=127: agrees with posted (uncorrected) values at {moved}")


def test_criterion_10_congruences():
    with Criterion(10, "curve congruences: exhaustive at p=11, 10^4 seeded samples at p=19") as c:
        rep = congruence_scan(11)
        c.check(rep.checked == 2048 and rep.passed, f"p=11: {len(rep.violations)} violations over {rep.checked}")
        rep = congruence_scan(19, sample=10_000, seed=1)
        c.check(rep.checked == 10_000 and rep.passed, f"p=19: {len(rep.violations)} violations")


def test_criterion_11_statistics():
    with Criterion(11, "statistics: Sidel'nikov, sup-distance trend, mu = p, distance bounds") as c:
        dists = {p: weight_distribution(build(p, "qqr")) for p in (3, 7, 11, 19, 23)}
        for p in (11, 19, 23):
            tab = cdf_compare(dists[p])
            c.check(tab.within_bound, f"p={p}: sup {tab.sup_distance} > 20/sqrt(d_perp) = {tab.bound}")
        s3 = cdf_compare(dists[3], strict=False).sup_distance
        s23 = cdf_compare(dists[23]).sup_distance
        c.check(s23 < s3, f"sup-distance p=23 {s23:.4f} not below p=3 {s3:.4f}",
                f"sup-distance p=3 {s3:.4f} > p=23 {s23:.4f}")
        for p, w in dists.items():
            c.check(moments(w).mu == Fraction(p), f"p={p}: mu = {moments(w).mu}")
        for p in (3, 11, 19):
            b = bounds_report(p, dists[p].min_distance)
            c.check(b.delta > 0.11 and b.exceeds_gv, f"p={p}: delta {b.delta:.3f} does not exceed GV")
            c.check(b.bound_holds, f"p={p}: {b.bound_name} bound fails for d = {b.d}")

"""Independent reference computations used by the tests.

Nothing here calls the enumerator or the reconstruction solvers; the
helpers are deliberately slow and direct.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product

from qqrcodes.poly import HomPoly, solve_exact


def residues(p):
    return sorted({a * a % p for a in range(1, p)})


def circulant_rows(first, p):
    """Rows of the p x p circulant whose row i has ones at (i + a) mod p for a in ``first``."""
    return [[1 if (c - i) % p in first else 0 for c in range(p)] for i in range(p)]


def span_weights(rows):
    """Weight distribution of the span of ``rows`` (lists of 0/1), by listing every combination."""
    n = len(rows[0])
    words = set()
    for coeffs in product((0, 1), repeat=len(rows)):
        w = tuple(sum(c * r[j] for c, r in zip(coeffs, rows)) % 2 for j in range(n))
        words.add(w)
    hist = [0] * (n + 1)
    for w in words:
        hist[sum(w)] += 1
    return hist, len(words)


def legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def points_direct(p, subset):
    """#{(x, y) in F_p^2 : y^2 = prod (x - a)} by trying every y."""
    count = 0
    for x in range(p):
        v = 1
        for a in subset:
            v = v * (x - a) % p
        count += sum(1 for y in range(p) if y * y % p == v)
    return count


# --- p = 127 reference counts ------------------------------------------------
#
# The extended QR code of length 128 is a doubly-even self-dual [128, 64, 20]
# code, so its enumerator is a polynomial in phi = x^8 + 14 x^4 y^4 + y^8 and
# xi = x^4 y^4 (x^4 - y^4)^4.  Six coefficients are fixed by A_0 = 1,
# A_4 = ... = A_16 = 0 and one anchor value; puncturing then gives the QR
# counts (every coordinate of the extended code is equivalent).

PHI = HomPoly([1, 0, 0, 0, 14, 0, 0, 0, 1])
XI = HomPoly([0, 0, 0, 0, 1, 0, 0, 0, -4, 0, 0, 0, 6, 0, 0, 0, -4, 0, 0, 0, 1, 0, 0, 0, 0])


def type2_basis(n=128):
    out = []
    for j in range(n // 24 + 1):
        out.append((PHI ** ((n - 24 * j) // 8)) * (XI ** j))
    return out


def extended_qr127(anchor_52: int):
    """A_w of the [128, 64, 20] code given A_52 of the extended code."""
    basis = type2_basis()
    rows, rhs = [], []
    for w, target in [(0, 1), (4, 0), (8, 0), (12, 0), (16, 0), (52, anchor_52)]:
        rows.append({j: b[w].re for j, b in enumerate(basis) if not b[w].is_zero()})
        rhs.append(Fraction(target))
    sol, rank, _, consistent = solve_exact(rows, rhs, len(basis))
    assert consistent and sol is not None, rank
    total = HomPoly([0] * 129)
    for c, b in zip(sol, basis):
        total = total + b.scale(c)
    return [c.re for c in total.coeffs], sol


def punctured(ext_counts, n=128):
    """Counts of the code obtained by deleting one coordinate of a transitive code."""
    out = [Fraction(0)] * n
    for w, a in enumerate(ext_counts):
        if not a:
            continue
        if w > 0:
            out[w - 1] += Fraction(w, n) * a
        if w < n:
            out[w] += Fraction(n - w, n) * a
    assert all(v.denominator == 1 for v in out)
    return [int(v) for v in out]


def qr127_counts(corrected_51: int, corrected_52: int):
    # A^ext_52 = A^Q_51 + A^Q_52
    ext, _ = extended_qr127(corrected_51 + corrected_52)
    return punctured(ext)


# --- acceptance log ------------------------------------------------------------

ACCEPTANCE: list[str] = []


def record(number: int, title: str, failures: list[str], seconds: float, notes: list[str] = ()) -> None:
    status = "PASS" if not failures else "FAIL"
    line = f"criterion {number:>2} {status}  {title} ({seconds:.2f} s)"
    for f in failures:
        line += f"\n              - {f}"
    for n in notes:
        line += f"\n              + {n}"
    ACCEPTANCE.append(line)
    print(line)

"""Command-line front end: ``qqr <command> [options]``.

Exit codes: 0 when every verdict passes, 1 when a check fails, 2 on usage
or input errors.  ``--json`` prints a report ``{command, params, verdicts,
values, runtime_ms}``; ``--csv PATH`` writes the command's table.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import analytics, codes, curves, poly, tables
from .enumerator import WeightDistribution, weight_distribution
from .gf2 import BudgetExceeded, LengthMismatch, dual, get_budget, set_budget
from .tables import Verdict

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


@dataclass
class Report:
    command: str
    params: dict
    verdicts: list[Verdict] = field(default_factory=list)
    values: dict = field(default_factory=dict)
    csv_header: tuple[str, ...] | None = None
    csv_rows: list = field(default_factory=list)
    plot: object = None  # callable(path) rendering the figure
    runtime_ms: float = 0.0

    def check(self, name: str, passed: bool, witness=None) -> bool:
        self.verdicts.append(Verdict(name, bool(passed), witness))
        return bool(passed)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def to_dict(self) -> dict:
        return jsonable({
            "command": self.command,
            "params": self.params,
            "verdicts": [v.to_dict() for v in self.verdicts],
            "values": self.values,
            "runtime_ms": round(self.runtime_ms, 3),
        })


def jsonable(obj):
    """Recursively convert to plain JSON types; exact rationals become strings."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else obj.numerator
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else str(obj)
    if hasattr(obj, "item"):  # numpy scalars
        return jsonable(obj.item())
    if isinstance(obj, Path):
        return str(obj)
    return str(obj)


def emit_json(report: Report) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True)


def parse_json(text: str) -> dict:
    return json.loads(text)


# --- argument parsing -------------------------------------------------------

def parse_budget(text: str) -> int:
    s = text.strip().replace(" ", "")
    try:
        if "^" in s or "**" in s:
            base, _, exp = s.replace("**", "^").partition("^")
            value = int(base) ** int(exp)
        elif "<<" in s:
            a, _, b = s.partition("<<")
            value = int(a) << int(b)
        else:
            value = int(float(s)) if "e" in s.lower() else int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad budget {text!r}; use e.g. 67108864, 2^26 or 1<<26") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("budget must be positive")
    return value


def _subset(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad subset {text!r}; use comma-separated integers") from None


def _family(text: str) -> codes.CodeFamily:
    try:
        return codes.CodeFamily.parse(text)
    except ValueError as exc:
        choices = ", ".join(f.value for f in codes.CodeFamily)
        raise argparse.ArgumentTypeError(f"{exc}; choose from {choices}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("common options")
    g.add_argument("--budget", type=parse_budget, default=None, help="max codewords or subsets to enumerate (default 2^26)")
    g.add_argument("--tol", type=float, default=1e-8, help="numeric tolerance for root moduli (default 1e-8)")
    g.add_argument("--seed", type=int, default=0, help="seed for sampled scans")
    g.add_argument("--json", action="store_true", help="print a JSON report")
    g.add_argument("--csv", metavar="PATH", type=Path, default=None, help="write the table of this command as CSV")
    g.add_argument("--plot", metavar="PATH", type=Path, default=None, help="render a figure to PATH (png, pdf, svg)")
    g.add_argument("--workers", type=int, default=1, help="worker processes for enumeration")

    parser = argparse.ArgumentParser(prog="qqr", description="Quadratic-residue and quasi-quadratic-residue code toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text, description=help_text)

    p = add("construct", "build a code and report its parameters")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--family", type=_family, default=codes.CodeFamily.QQR)
    p.add_argument("--distance", action="store_true", help="also compute the minimum distance by enumeration")

    p = add("weights", "weight distribution by enumeration or Gleason reconstruction")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--family", type=_family, default=codes.CodeFamily.QQR)
    p.add_argument("--method", choices=("brute", "gleason"), default="brute")
    p.add_argument("--assume-d", type=int, default=None, help="lower bound on d used by --method gleason")
    p.add_argument("--known", type=Path, default=None, help="table file of known counts A_j")
    p.add_argument("--linear", action="store_true", help="linear axis for --plot")

    p = add("shadow", "shadow enumerator of the QQR code")
    p.add_argument("--p", type=int, required=True)

    p = add("divisibility", "divisibility of the enumerator by (x^2+y^2) or (x+y)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--family", type=_family, default=codes.CodeFamily.QQR)

    p = add("zeta", "Duursma zeta polynomial and optional Riemann-hypothesis check")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--family", type=_family, default=codes.CodeFamily.QQR)
    p.add_argument("--dperp", type=int, default=None, help="dual distance (default: from the dual enumerator)")
    p.add_argument("--rh", action="store_true", help="check that all roots have modulus q^(-1/2)")

    p = add("psl2", "check the generators S, V, T of PSL2(p) on the extended code")
    p.add_argument("--p", type=int, required=True)

    p = add("curves", "point counts of y^2 = f_S(x) over F_p")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--distribution", action="store_true", help="B_k over all even-size subsets (default mode)")
    p.add_argument("--interlace", action="store_true", help="compare B_k with the QQR weight distribution")
    p.add_argument("--congruence", action="store_true", help="check |X_S| = 2 or 3 (mod 4)")
    p.add_argument("--samples", type=int, default=None, help="random subsets for --congruence (default: all)")
    p.add_argument("--subset", type=_subset, default=None, help="count points for one subset, e.g. 0,1")

    p = add("stats", "moments, c.d.f. against the normal law, and distance bounds")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--family", type=_family, default=codes.CodeFamily.QQR)
    p.add_argument("--dperp", type=int, default=None)
    p.add_argument("--max-order", type=int, default=4)
    p.add_argument("--compare", type=_subset, default=None, help="extra primes to overlay in --plot")

    p = add("audit", "four-check audit of a weight-table file")
    p.add_argument("file", type=Path)
    fix = p.add_mutually_exclusive_group()
    fix.add_argument("--corrected", action="store_true", help="overwrite with the bundled corrected values for this p")
    fix.add_argument("--posted", action="store_true", help="overwrite with the bundled posted values for this p")

    p = add("reconstruct-qr", "QR weight distribution from partial counts via (x+y)^d divisibility")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--known", type=Path, default=None)
    p.add_argument("--no-symmetry", action="store_true", help="do not impose A_j = A_(p-j)")
    return parser


# --- helpers ----------------------------------------------------------------

def _prime(p: int) -> codes.PrimeParams:
    if p < 3:
        raise codes.NotPrime(f"need an odd prime, got {p}")
    return codes.prime_params(p)


def _enumerate(code, args) -> WeightDistribution:
    return weight_distribution(code, budget=args.budget, workers=args.workers)


def _counts_table(report: Report, counts) -> None:
    report.csv_header = ("k", "count")
    report.csv_rows = list(enumerate(counts))


def _load_known(path: Path | None) -> dict[int, int]:
    if path is None:
        return {}
    return dict(tables.parse_weight_table(path, require_meta=False).records)


def _dual_distance(a: poly.HomPoly, k: int) -> int:
    b = poly.to_counts(poly.macwilliams(a, k))
    return b.min_distance


def _round_floats(xs, digits=12):
    return [round(x, digits) for x in xs]


# --- commands ---------------------------------------------------------------

def cmd_construct(args, r: Report) -> None:
    pp = _prime(args.p)
    fam = args.family
    c = codes.build(pp, fam)
    expected = {
        codes.CodeFamily.QR_Q: (pp.p + 1) // 2, codes.CodeFamily.QR_N: (pp.p + 1) // 2,
        codes.CodeFamily.EXPURGATED_Q: (pp.p - 1) // 2, codes.CodeFamily.EXPURGATED_N: (pp.p - 1) // 2,
        codes.CodeFamily.QQR: pp.p, codes.CodeFamily.QQR_STD_FORM: pp.p,
        codes.CodeFamily.C0: pp.p - 1, codes.CodeFamily.C0_PERP: pp.p + 1, codes.CodeFamily.EXTENDED: pp.p + 1,
    }[fam]
    r.values.update(p=pp.p, family=fam.value, n=c.n, k=c.k, residue_class=pp.p % 8, rho=pp.rho,
                    self_orthogonal=c.is_self_orthogonal(), self_dual=c.is_self_dual())
    r.check("dimension", c.k == expected, {"k": c.k, "expected": expected})
    if fam is codes.CodeFamily.QQR and pp.p % 4 == 3:
        r.check("self-dual", c.is_self_dual())
    if fam is codes.CodeFamily.QQR_STD_FORM:
        r.check("perron-identity", codes.perron_identity_check(pp))
        r.check("standard-form-equals-qqr", codes.standard_form_check(pp))
    if fam is codes.CodeFamily.C0_PERP:
        c0 = codes.build(pp, codes.CodeFamily.C0)
        r.check("c0-perp-is-dual-of-c0", dual(c0) == c)
    if args.distance:
        w = _enumerate(c, args)
        r.values["d"] = w.min_distance


def cmd_weights(args, r: Report) -> None:
    pp = _prime(args.p)
    known = _load_known(args.known)
    if args.method == "gleason":
        if args.family is not codes.CodeFamily.QQR:
            raise UsageError("--method gleason applies to --family qqr")
        d_low = args.assume_d if args.assume_d is not None else 2
        r.params["assume_d"] = d_low
        w = poly.gleason_reconstruct(pp.p, d_low, known)
        r.values["gleason"] = {f"a_{i}": a for i, a in sorted(w.meta["gleason"].items())}
    else:
        c = codes.build(pp, args.family)
        w = _enumerate(c, args)
        for j, v in known.items():
            r.check(f"known-A_{j}", w[j] == v, {"computed": w[j], "supplied": v})
        if args.assume_d is not None:
            r.check("assumed-distance", w.min_distance >= args.assume_d,
                    {"d": w.min_distance, "assumed": args.assume_d})
    r.values.update(n=w.n, k=w.k, d=w.min_distance, provenance=w.provenance, counts=list(w.counts))
    r.check("sum-is-2^k", w.total == 1 << w.k, {"sum": w.total})
    _counts_table(r, w.counts)
    title = f"{args.family.value}, p = {pp.p}"

    def render(path):
        from . import plotting

        return plotting.plot_weight_distribution(w, path, title=title, log=not args.linear)

    r.plot = render


def cmd_shadow(args, r: Report) -> None:
    pp = _prime(args.p)
    c = codes.build(pp, codes.CodeFamily.QQR)
    if not c.is_self_dual():
        raise codes.WrongResidueClass(f"QQR({pp.p}) is not self-dual; need p = 3 (mod 4)")
    w = _enumerate(c, args)
    a = poly.from_counts(w)
    s = poly.shadow_transform(a, w.k)
    try:
        coeffs = poly.integer_coeffs(s)
        integral = True
    except poly.NonIntegerCoefficient as exc:
        coeffs, integral = [str(x) for x in s.coeffs], False
        r.values["integrality_error"] = str(exc)
    d = w.min_distance
    nonneg = integral and all(v >= 0 for v in coeffs)
    r.check("nonnegative-integer", nonneg)
    min_wt = next((j for j, v in enumerate(coeffs) if v), None) if integral else None
    r.check("min-weight>=d-1", min_wt is not None and min_wt >= d - 1, {"min_weight": min_wt, "d": d})
    r.check("inverse-shadow-identity", poly.inverse_shadow(s, w.k) == a)
    r.values.update(p=pp.p, d=d, shadow_min_weight=min_wt, shadow=coeffs)
    _counts_table(r, coeffs)


def cmd_divisibility(args, r: Report) -> None:
    pp = _prime(args.p)
    fam = args.family
    c = codes.build(pp, fam)
    w = _enumerate(c, args)
    a = poly.from_counts(w)
    d = w.min_distance
    r.values.update(p=pp.p, family=fam.value, n=w.n, k=w.k, d=d)
    if fam is codes.CodeFamily.QQR:
        order = poly.divisibility_order(a, poly.Factor.X2_PLUS_Y2)
        dec = poly.gleason_decompose(a)
        idx = dec.indices()
        r.values.update(factor="x2+y2", order=order, gleason={f"a_{i}": dec[i] for i in idx})
        r.check("order>=d-1", order >= d - 1, {"order": order, "d": d})
        r.check("indices-congruent-p-mod-4", all(i % 4 == pp.p % 4 for i in idx), {"indices": idx})
        r.check("a_i=0-below-d-1", all(i >= d - 1 for i in idx), {"lowest": min(idx)})
        r.check("a_p=1", dec[pp.p] == 1, {"a_p": dec[pp.p]})
        if pp.p >= 7:
            r.check("a_(p-4)=-p", dec[pp.p - 4] == -pp.p, {"a_(p-4)": dec[pp.p - 4]})
    else:
        order = poly.divisibility_order(a, poly.Factor.X_PLUS_Y)
        r.values.update(factor="x+y", order=order)
        r.check("order>=d", order >= d, {"order": order, "d": d})
        if fam is codes.CodeFamily.QR_Q and pp.p % 4 == 3:
            wq = _enumerate(codes.build(pp, codes.CodeFamily.QQR), args)
            r.check("qqr-from-qr-identity", poly.qqr_from_qr(a) == poly.from_counts(wq))
            r.check("d(qqr)=d(qr)+1", wq.min_distance == d + 1, {"d_qqr": wq.min_distance, "d_qr": d})
            r.values["d_qqr"] = wq.min_distance


def cmd_zeta(args, r: Report) -> None:
    pp = _prime(args.p)
    c = codes.build(pp, args.family)
    w = _enumerate(c, args)
    a = poly.from_counts(w)
    dual_a = poly.macwilliams(a, w.k)
    dperp = args.dperp if args.dperp is not None else poly.to_counts(dual_a).min_distance
    z = analytics.zeta_polynomial(w, dperp=dperp)
    r.values.update(p=pp.p, family=args.family.value, n=w.n, d=w.min_distance, dperp=dperp,
                    degree=z.degree, coeffs=list(z.coeffs))
    if dual_a == a and z.degree % 2 == 0:
        res = z.functional_equation_residual()
        r.check("functional-equation", all(x == 0 for x in res))
    if args.rh:
        rep = analytics.rh_check(z, tol=args.tol)
        dev = max((abs(m - rep.target) for m in rep.moduli), default=0.0)
        r.values.update(real_roots=rep.real_roots, conjugate_pairs=rep.conjugate_pairs,
                        on_circle_pairs=len(rep.on_circle_pairs), target_modulus=rep.target,
                        max_modulus_deviation=dev, max_residual=rep.max_residual,
                        root_consistency=analytics.root_consistency(z, rep),
                        roots=[complex(x) for x in rep.roots])
        r.check("riemann-hypothesis", rep.passed,
                {"real_roots": rep.real_roots, "off_circle": sum(abs(m - rep.target) > args.tol for m in rep.moduli)})
        r.csv_header = ("re", "im", "modulus")
        r.csv_rows = [(x.real, x.imag, m) for x, m in zip(rep.roots, rep.moduli)]
        title = f"{args.family.value}, p = {pp.p}"

        def render(path):
            from . import plotting

            return plotting.plot_zeta_roots(rep.roots, rep.target, path, title=title)

        r.plot = render
    else:
        r.csv_header = ("i", "P_i")
        r.csv_rows = [(i, str(x)) for i, x in enumerate(z.coeffs)]


def cmd_psl2(args, r: Report) -> None:
    pp = _prime(args.p)
    c = codes.build(pp, codes.CodeFamily.EXTENDED)
    r.values.update(p=pp.p, n=c.n, k=c.k, rho=pp.rho)
    for g in codes.psl2_generators(pp):
        r.check(g.name, codes.automorphism_check(c, g))


def cmd_curves(args, r: Report) -> None:
    pp = _prime(args.p)
    p = pp.p
    r.values["p"] = p
    ran = False
    if args.subset is not None:
        ran = True
        s = curves.SubsetS.of(p, args.subset)
        r.values.update(subset=s.elements(), points=curves.count_affine_points(s),
                        codeword_weight=curves.qqr_codeword(s, pp).bit_count())
        r.check("weight-match", curves.weight_match_check(s))
    if args.congruence:
        ran = True
        sample = "all" if args.samples is None else args.samples
        rep = curves.congruence_scan(p, sample=sample, seed=args.seed, budget=args.budget)
        r.values.update(congruence_mode=rep.mode, checked=rep.checked, violations=len(rep.violations),
                        congruence_seed=rep.seed)
        r.check("congruence", rep.passed, {"first": rep.violations[:5]})
    if args.distribution or args.interlace or not ran:
        b = curves.point_distribution(p, budget=args.budget)
        counts = [b[k] for k in range(2 * p + 1)]
        r.values.update(B=counts, curves=b.total)
        _counts_table(r, counts)
        w = None
        if args.interlace:
            w = _enumerate(codes.build(pp, codes.CodeFamily.QQR), args)
            r.values["A"] = list(w.counts)
            r.check("interlace", curves.interlace_check(w, b))

        def render(path, w=w):
            from . import plotting

            w = w or _enumerate(codes.build(pp, codes.CodeFamily.QQR), args)
            return plotting.plot_interlace(w, b, path)

        r.plot = render


def _cdf_for(p: int, family, args, dperp=None):
    c = codes.build(p, family)
    w = _enumerate(c, args)
    if dperp is None:
        dperp = _dual_distance(poly.from_counts(w), w.k)
    return w, dperp, analytics.cdf_compare(w, dperp=dperp, strict=False)


def cmd_stats(args, r: Report) -> None:
    pp = _prime(args.p)
    w, dperp, tab = _cdf_for(pp.p, args.family, args, args.dperp)
    mom = analytics.moments(w, args.max_order)
    r.values.update(p=pp.p, family=args.family.value, n=w.n, d=w.min_distance, dperp=dperp,
                    mu=mom.mu, sigma2=mom.sigma2, sigma=mom.sigma,
                    central={str(k): v for k, v in mom.central.items()},
                    standardized={str(k): v for k, v in mom.standardized.items()},
                    sup_distance=tab.sup_distance, sup_at=tab.sup_at, sidelnikov_bound=tab.bound)
    r.check("mu=n/2", mom.mu == Fraction(w.n, 2), {"mu": mom.mu})
    if dperp >= 3:
        r.check("sidelnikov", tab.within_bound, {"sup": tab.sup_distance, "bound": tab.bound})
    else:
        r.values["sidelnikov"] = f"not applicable (dual distance {dperp} < 3)"
    if args.family is codes.CodeFamily.QQR:
        b = analytics.bounds_report(pp.p, w.min_distance)
        r.values["bounds"] = b.to_dict()
        r.check("delta>gv", b.exceeds_gv, {"delta": b.delta, "gv": b.gv_delta})
        if b.bound_name:
            r.check(b.bound_name, b.bound_holds, {"d": b.d, "bound": b.bound_value})
    r.csv_header = ("z", "A_z", "Phi_z")
    r.csv_rows = list(tab.rows())

    def render(path):
        from . import plotting

        lines = {f"p = {pp.p}": tab}
        for q in args.compare or []:
            lines[f"p = {q}"] = _cdf_for(q, args.family, args)[2]
        return plotting.plot_cdf_comparison(lines, path)

    r.plot = render


def cmd_audit(args, r: Report) -> None:
    t = tables.parse_weight_table(args.file)
    applied = None
    if args.corrected or args.posted:
        part = "corrected" if args.corrected else "posted"
        fx = tables.fixtures()
        if t.p not in fx:
            raise UsageError(f"no bundled values for p={t.p}; bundled: {sorted(fx)}")
        t = t.with_values(fx[t.p][part], source=f"{t.source}+{part}")
        applied = part
    rep = tables.audit_table(t)
    r.verdicts.extend(rep.verdicts)
    r.values.update(p=t.p, k=t.k, n=t.n, d=t.d, source=t.source, applied=applied, records=len(t.records))


def cmd_reconstruct_qr(args, r: Report) -> None:
    pp = _prime(args.p)
    known = _load_known(args.known)
    w = poly.qr_reconstruct(pp.p, args.d, known, symmetric=not args.no_symmetry, validate=False)
    rep = tables.audit_distribution(w, p=pp.p, k=w.k, d=args.d)
    r.verdicts.extend(rep.verdicts)
    r.check("knowns-reproduced", all(w[j] == v for j, v in known.items()))
    fx = tables.fixtures().get(pp.p)
    if fx:
        corrected = fx["corrected"]
        diff = {j: w[j] for j, v in corrected.items() if w[j] != v}
        r.check("matches-bundled-corrections", not diff, {"differs_at": diff})
        r.values["corrections"] = {f"A_{j}": {"reconstructed": w[j], "posted": fx["posted"].get(j), "corrected": v}
                                   for j, v in sorted(corrected.items())}
    r.values.update(p=pp.p, d=args.d, k=w.k, knowns=len(known), counts=list(w.counts))
    _counts_table(r, w.counts)


COMMANDS = {
    "construct": cmd_construct,
    "weights": cmd_weights,
    "shadow": cmd_shadow,
    "divisibility": cmd_divisibility,
    "zeta": cmd_zeta,
    "psl2": cmd_psl2,
    "curves": cmd_curves,
    "stats": cmd_stats,
    "audit": cmd_audit,
    "reconstruct-qr": cmd_reconstruct_qr,
}

_INPUT_ERRORS = (UsageError, codes.NotPrime, codes.WrongResidueClass, tables.ParseError, tables.MissingMetadata,
                 tables.IncompleteTable, poly.InsufficientKnowns, analytics.PreconditionFailed, LengthMismatch,
                 BudgetExceeded, FileNotFoundError, IsADirectoryError)
_CHECK_ERRORS = (poly.ValidationFailed, poly.InconsistentSystem, analytics.SingularSystem, poly.NotInGleasonRing)


# --- output -----------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, (list, tuple)) and len(v) > 12:
        return "[" + ", ".join(_fmt(x) for x in v[:12]) + f", ... ({len(v)} items)]"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_fmt(x)}" for k, x in v.items()) + "}"
    return str(v)


def render_text(report: Report) -> str:
    params = " ".join(f"{k}={v}" for k, v in report.params.items() if v not in (None, False))
    lines = [f"{report.command} {params}".rstrip()]
    for k, v in report.values.items():
        lines.append(f"  {k}: {_fmt(jsonable(v))}")
    for v in report.verdicts:
        wit = f"  {_fmt(jsonable(v.witness))}" if v.witness not in (None, {}) else ""
        lines.append(f"{'PASS' if v.passed else 'FAIL'} {v.name}{wit}")
    lines.append(f"overall: {'PASS' if report.passed else 'FAIL'} ({report.runtime_ms:.0f} ms)")
    return "\n".join(lines)


def _write_csv(report: Report, path: Path) -> None:
    if report.csv_header is None:
        raise UsageError(f"{report.command} has no table to write")
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        out = csv.writer(fh)
        out.writerow(report.csv_header)
        out.writerows(report.csv_rows)


def _params(args) -> dict:
    skip = {"json", "csv", "plot", "command"}
    out = {}
    for k, v in vars(args).items():
        if k in skip:
            continue
        if isinstance(v, codes.CodeFamily):
            v = v.value
        elif isinstance(v, Path):
            v = str(v)
        out[k] = v
    return out


def run(argv=None) -> tuple[int, Report | None]:
    """Parse, dispatch and emit; returns the exit code and the report."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else EXIT_USAGE), None
    report = Report(args.command, _params(args))
    previous = get_budget()
    start = time.perf_counter()
    try:
        if args.budget is not None:
            set_budget(args.budget)
        COMMANDS[args.command](args, report)
    except _CHECK_ERRORS as exc:
        report.check(type(exc).__name__, False, str(exc))
    except _INPUT_ERRORS as exc:
        print(f"qqr {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE, None
    finally:
        set_budget(previous)
    report.runtime_ms = (time.perf_counter() - start) * 1000
    try:
        if args.csv is not None:
            _write_csv(report, args.csv)
        if args.plot is not None:
            if report.plot is None:
                raise UsageError(f"{args.command} has no figure")
            report.values["figure"] = str(report.plot(args.plot))
    except UsageError as exc:
        print(f"qqr {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE, report
    print(emit_json(report) if args.json else render_text(report))
    return (EXIT_OK if report.passed else EXIT_FAIL), report


def main(argv=None) -> int:
    return run(argv)[0]


if __name__ == "__main__":
    sys.exit(main())

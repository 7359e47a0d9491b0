"""Weight-table files, the four-check audit, and bundled correction values.

Table format (UTF-8 text)::

    # p=113 k=57 d=15 source=online-table
    # symmetric=true
    0 1
    15 ...

Header lines start with ``#`` and carry ``key=value`` pairs; body lines
are ``j A_j`` with exact decimal integers only.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .enumerator import WeightDistribution
from .poly import Factor, HomPoly, X_MINUS_Y_FORM, X_PLUS_Y_FORM, divisibility_order, from_counts


class ParseError(ValueError):
    def __init__(self, line: int, reason: str):
        self.line = line
        super().__init__(f"line {line}: {reason}")


class DuplicateIndex(ParseError):
    pass


class MissingMetadata(ValueError):
    pass


class IncompleteTable(ValueError):
    pass


_INT = re.compile(r"^\d+$")
_TRUE = {"1", "true", "yes"}


@dataclass
class WeightTableFile:
    p: int
    k: int
    n: int
    d: int | None = None
    source: str = ""
    symmetric: bool = False
    records: dict[int, int] = field(default_factory=dict)
    meta: dict[str, str] = field(default_factory=dict)

    def is_complete(self) -> bool:
        return all(j in self.records for j in range(self.n + 1))

    def missing(self) -> list[int]:
        return [j for j in range(self.n + 1) if j not in self.records]

    def to_distribution(self) -> WeightDistribution:
        if not self.is_complete():
            raise IncompleteTable(f"no counts for j in {self.missing()}")
        counts = tuple(self.records[j] for j in range(self.n + 1))
        return WeightDistribution(self.n, self.k, counts, "ingested", {"p": self.p, "source": self.source})

    def with_values(self, updates: dict[int, int], source: str | None = None) -> WeightTableFile:
        records = dict(self.records)
        records.update(updates)
        return WeightTableFile(self.p, self.k, self.n, self.d, source or self.source, self.symmetric,
                               records, dict(self.meta))

    def dumps(self) -> str:
        head = [f"# p={self.p} k={self.k} n={self.n}" + (f" d={self.d}" if self.d is not None else "")]
        if self.source:
            head.append(f"# source={self.source}")
        body = [f"{j} {v}" for j, v in sorted(self.records.items())]
        return "\n".join(head + body) + "\n"


def parse_weight_table_text(text: str, require_meta: bool = True) -> WeightTableFile:
    """Parse a table; with ``require_meta=False`` a bare list of records is accepted."""
    meta: dict[str, str] = {}
    records: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            for token in line[1:].split():
                if "=" not in token:
                    continue
                key, _, value = token.partition("=")
                meta[key.strip().lower()] = value.strip()
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(lineno, f"expected 'j A_j', got {line!r}")
        j_text, a_text = parts
        if not _INT.match(j_text):
            raise ParseError(lineno, f"index {j_text!r} is not a nonnegative integer")
        if not _INT.match(a_text):
            raise ParseError(lineno, f"count {a_text!r} is not an exact nonnegative integer")
        j = int(j_text)
        if j in records:
            raise DuplicateIndex(lineno, f"duplicate index {j}")
        records[j] = int(a_text)
    for key in ("p", "k"):
        if key not in meta:
            if require_meta:
                raise MissingMetadata(f"header is missing {key}=")
            meta[key] = "0"
    try:
        p, k = int(meta["p"]), int(meta["k"])
        default_n = p if p else max(records, default=0)
        n = int(meta.get("n", default_n))
        d = int(meta["d"]) if "d" in meta else None
    except ValueError as exc:
        raise MissingMetadata(f"malformed header value: {exc}") from exc
    bad = [j for j in records if j > n]
    if bad:
        raise ParseError(0, f"indices {sorted(bad)} exceed n={n}")
    symmetric = meta.get("symmetric", "").lower() in _TRUE
    if symmetric:
        for j, v in list(records.items()):
            mirror = n - j
            if mirror in records and records[mirror] != v:
                raise ParseError(0, f"symmetric table has A_{j} != A_{mirror}")
            records[mirror] = v
    return WeightTableFile(p, k, n, d, meta.get("source", ""), symmetric, records, meta)


def parse_weight_table(path, require_meta: bool = True) -> WeightTableFile:
    return parse_weight_table_text(Path(path).read_text(encoding="utf-8"), require_meta)


# --- audit ------------------------------------------------------------------

@dataclass
class Verdict:
    name: str
    passed: bool
    witness: object = None

    def to_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed, "witness": self.witness}


@dataclass
class AuditReport:
    verdicts: list[Verdict]

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def __getitem__(self, name: str) -> Verdict:
        return next(v for v in self.verdicts if v.name == name)


def extended_enumerator(a: HomPoly) -> HomPoly:
    """f = x (A(x,y) + A(x,-y))/2 + y (A(x,y) - A(x,-y))/2: append an overall parity bit."""
    return a.even_part().mul_x() + a.odd_part().mul_y()


def audit_distribution(dist: WeightDistribution, p: int, k: int, d: int | None = None) -> AuditReport:
    counts = dist.counts
    n = dist.n
    if d is None:
        d = dist.min_distance
    not_divisible = [j for j in range(1, n) if counts[j] % p]
    check1 = Verdict("divisible-by-p", not not_divisible, {"offending": not_divisible})

    total = sum(counts)
    check2 = Verdict("sum-is-2^k", total == 1 << k, {"sum": total, "expected": 1 << k, "delta": total - (1 << k)})

    a = from_counts(dist)
    order = divisibility_order(a, Factor.X_PLUS_Y) if total else 0
    check3 = Verdict("divisible-by-(x+y)^d", order >= d, {"order": order, "d": d})

    f = extended_enumerator(a)
    g = f.substitute(X_PLUS_Y_FORM, X_MINUS_Y_FORM).scale(Fraction(1, 2 ** k))
    bad = [j for j in range(f.degree + 1) if f[j] != g[j]]
    check4 = Verdict("macwilliams-extended", not bad, {"mismatched_j": bad})
    return AuditReport([check1, check2, check3, check4])


def audit_table(t: WeightTableFile) -> AuditReport:
    if not t.is_complete():
        raise IncompleteTable(f"audit needs every A_j; missing {t.missing()}")
    return audit_distribution(t.to_distribution(), p=t.p, k=t.k, d=t.d)


# --- bundled corrections ----------------------------------------------------

def fixtures() -> dict:
    """Published correction values, keyed by p, with provenance notes."""
    raw = json.loads(resources.files("qqrcodes.data").joinpath("corrections.json").read_text("utf-8"))
    out = {}
    for key, entry in raw.items():
        fixed = dict(entry)
        for part in ("posted", "corrected"):
            if part in fixed:
                fixed[part] = {int(j): int(v) for j, v in fixed[part].items()}
        out[int(key)] = fixed
    return out

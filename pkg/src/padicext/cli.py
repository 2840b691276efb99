"""
Command line front end.

    padicext classify --p 3 --poly "x^3 + 9*x + 3" --json
    padicext table --json
    padicext verify --p 7 --count 500
    padicext gen-corpus --p 3 --degree 3 --count 20

Exit status: 0 success, 1 usage or parse error, 2 rejected input, 3 unsupported,
4 internal inconsistency, 5 oracle inconclusive.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, is_dataclass
from fractions import Fraction
from typing import Optional

from . import oracle, tame, wild3
from .errors import InternalInconsistency, PadicExtError, Unsupported
from .exactnum import is_prime, val_p
from .polyring import Poly, depressed_transform

PRECISION_ENV = "PADICEXT_PRECISION"


# ---------------------------------------------------------------------------
# expression parser


class ParseError(PadicExtError, ValueError):
    exit_code = 1

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class PolyExpr:
    source: str
    poly: Poly


class _Parser:
    """Recursive descent over: sums, products, quotients by constants, powers, unary signs."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> Poly:
        value = self.expr()
        if self.peek():
            raise ParseError(f"unexpected {self.peek()!r}", self.pos)
        return value

    def expr(self) -> Poly:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Poly:
        value = self.unary()
        while self.peek() in ("*", "/", "x", "("):
            op = self.text[self.pos]
            at = self.pos
            if op in "*/":
                self.pos += 1
            else:
                op = "*"  # juxtaposition, as in 2x or 3(x + 1)
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if rhs.degree != 0:
                    raise ParseError("division by a non-constant", at)
                value = value * (1 / rhs[0])
        return value

    def unary(self) -> Poly:
        if self.peek() == "-":
            self.pos += 1
            return -self.unary()
        if self.peek() == "+":
            self.pos += 1
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            self.peek()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if start == self.pos:
                raise ParseError("expected a nonnegative integer exponent", start)
            base = base ** int(self.text[start : self.pos])
        return base

    def atom(self) -> Poly:
        ch = self.peek()
        if ch == "x":
            self.pos += 1
            return Poly.x()
        if ch == "(":
            self.pos += 1
            value = self.expr()
            if self.peek() != ")":
                raise ParseError("expected ')'", self.pos)
            self.pos += 1
            return value
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return Poly([int(self.text[start : self.pos])])
        raise ParseError(f"unexpected {ch!r}" if ch else "unexpected end of input", self.pos)


def parse_poly(text: str) -> PolyExpr:
    if "," in text:
        coeffs = []
        offset = 0
        for part in text.split(","):
            try:
                coeffs.append(Fraction(part.strip()))
            except ValueError:
                raise ParseError(f"bad coefficient {part.strip()!r}", offset) from None
            offset += len(part) + 1
        poly = Poly(coeffs)
    else:
        poly = _Parser(text).parse()
    if poly.degree < 1:
        raise ParseError("polynomial must have degree at least 1", 0)
    return PolyExpr(text, poly)


# ---------------------------------------------------------------------------
# result documents


def _jsonable(x):
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, (int, Fraction)):
        return str(x)
    if isinstance(x, float):
        return "inf" if math.isinf(x) else str(x)
    if isinstance(x, Poly):
        return x.to_expr()
    if is_dataclass(x):
        return _jsonable(asdict(x))
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


def _tame_invariants(label: tame.TameClassLabel, p: int, m: int, q: int) -> dict:
    if label.kind == "unramified":
        return {"e": 1, "f": q, "galois_group": f"C{q}", "inertia_group": "1",
                "disc_valuation": 0, "quadratic_subextension": None}
    order = next(k for k in range(1, q) if pow(p**m, k, q) == 1)
    if order == 1:
        group = f"C{q}"
    elif q == 3:
        group = "S3"
    else:
        group = f"C{q}:C{order}"
    return {"e": q, "f": 1, "galois_group": group, "inertia_group": f"C{q}",
            "disc_valuation": q - 1, "quadratic_subextension": None}


def classify_document(expr: PolyExpr, p: int, m: int = 1, oracle_check: bool = False,
                      precision: Optional[int] = None) -> dict:
    f = expr.poly
    n = f.degree
    if not is_prime(p):
        raise Unsupported(f"p = {p} is not prime")
    depressed, _ = depressed_transform(f) if n >= 2 else (f.monic(), 0)
    doc = {"input": expr.source, "p": p, "m": m, "degree": n, "depressed": depressed}
    if p == 3 and n == 3 and m == 1:
        label, cert = wild3.classify_cubic_q3(f)
        inv = label.invariants
        doc.update(
            family="cubic-q3",
            class_id=label.class_id,
            canonical=label.canonical,
            invariants={"e": inv.e, "f": inv.f, "galois_group": inv.galois_group,
                        "inertia_group": inv.inertia_group, "disc_valuation": inv.disc_exponent,
                        "quadratic_subextension": inv.quadratic_subextension},
            certificate=cert,
        )
        canonical = label.canonical
    elif n >= 2 and is_prime(n) and n != p:
        label, cert = tame.classify_tame_prime(f, p, n, m)
        doc.update(
            family="tame-prime",
            class_id=label.class_id,
            canonical=label.canonical_expr,
            invariants=_tame_invariants(label, p, m, n),
            certificate={"v_delta": cert.v_delta, "u": cert.u, "ell": cert.ell, "d": label.d,
                         "zeta_residue": list(label.zeta),
                         "r_search": [{"r": r, "value": list(v), "is_power": ok}
                                      for r, v, ok in cert.transcript],
                         "irreducibility": cert.irreducibility},
        )
        canonical = label.canonical
    else:
        raise Unsupported(f"no classifier for degree {n} over p = {p}, m = {m}")
    doc["oracle_checked"] = False
    if oracle_check:
        if m != 1 or canonical is None:
            raise Unsupported("the oracle works over Q_p only")
        agrees = oracle.oracle_isomorphic(f, canonical, p, precision)
        doc["oracle_checked"] = True
        doc["oracle_agrees"] = agrees
    return _jsonable(doc)


def error_document(source: str, exc: PadicExtError) -> dict:
    kind = {2: "rejected-input", 3: "unsupported", 4: "internal-inconsistency",
            5: "oracle-inconclusive"}.get(exc.exit_code, "error")
    if isinstance(exc, ParseError):
        kind = "parse-error"
    err = {"kind": kind, "message": str(exc)}
    witness = getattr(exc, "witness", None)
    if witness is not None:
        err["witness"] = witness
    return _jsonable({"input": source, "error": err})


def _render_text(doc: dict, show_certificate: bool) -> str:
    if "error" in doc:
        return f"{doc['input']}: {doc['error']['kind']}: {doc['error']['message']}"
    inv = doc["invariants"]
    lines = [
        f"{doc['input']}  over Q_{doc['p']}" + (f" (base degree {doc['m']})" if doc["m"] != "1" else ""),
        f"  class      {doc['class_id']}",
        f"  canonical  {doc['canonical']}",
        f"  e={inv['e']} f={inv['f']}  group {inv['galois_group']}  inertia {inv['inertia_group']}"
        f"  disc exponent {inv['disc_valuation']}"
        + (f"  quadratic {inv['quadratic_subextension']}" if inv["quadratic_subextension"] else ""),
    ]
    if doc.get("oracle_checked"):
        lines.append(f"  oracle     {'agrees' if doc['oracle_agrees'] else 'DISAGREES'}")
    if show_certificate:
        lines.append("  certificate " + json.dumps(doc["certificate"], sort_keys=True))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# commands


def _default_precision(args) -> Optional[int]:
    if getattr(args, "precision", None):
        return args.precision
    env = os.environ.get(PRECISION_ENV)
    return int(env) if env else None


def _read_inputs(args) -> list[str]:
    if args.poly is not None:
        return [args.poly]
    with open(args.file) as fh:
        return [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]


def _classify_one(job):
    text, p, m, check, precision = job
    try:
        doc = classify_document(parse_poly(text), p, m, check, precision)
        code = 4 if doc.get("oracle_checked") and not doc.get("oracle_agrees") else 0
        return doc, code
    except PadicExtError as exc:
        return error_document(text, exc), exc.exit_code


def _map(fn, jobs, workers: int):
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, jobs, chunksize=8))
    return [fn(j) for j in jobs]


def cmd_classify(args) -> int:
    jobs = [(t, args.p, args.m, args.oracle_check, _default_precision(args)) for t in _read_inputs(args)]
    status = 0
    for doc, code in _map(_classify_one, jobs, args.jobs):
        if args.json:
            print(json.dumps(doc, sort_keys=True))
        else:
            print(_render_text(doc, args.certificate))
        status = max(status, code)
    return status


TABLE_ORDER = (
    "sqrtm3-wild", "nongalois-sqrt3", "nongalois-sqrtm1",
    "galois-tau-1", "galois-tau-4", "galois-tau-7",
    "sqrtm3-tau-1", "sqrtm3-tau-4", "sqrtm3-tau-7",
)

TABLE_GOLDEN = (
    '[{"class_id": "sqrtm3-wild", "disc_exponent": "3", "galois_group": "S3", "inertia_group": "S3", '
    '"polynomial": "x^3 + 3*x + 3", "quadratic_subextension": "Q3(sqrt(-3))"}, '
    '{"class_id": "nongalois-sqrt3", "disc_exponent": "3", "galois_group": "S3", "inertia_group": "S3", '
    '"polynomial": "x^3 + 6*x + 3", "quadratic_subextension": "Q3(sqrt(3))"}, '
    '{"class_id": "nongalois-sqrtm1", "disc_exponent": "4", "galois_group": "S3", "inertia_group": "C3", '
    '"polynomial": "x^3 + 3*x^2 + 3", "quadratic_subextension": "Q3(sqrt(-1))"}, '
    '{"class_id": "galois-tau-1", "disc_exponent": "4", "galois_group": "C3", "inertia_group": "C3", '
    '"polynomial": "x^3 - 3*x^2 + 3", "quadratic_subextension": null}, '
    '{"class_id": "galois-tau-4", "disc_exponent": "4", "galois_group": "C3", "inertia_group": "C3", '
    '"polynomial": "x^3 - 3*x^2 + 12", "quadratic_subextension": null}, '
    '{"class_id": "galois-tau-7", "disc_exponent": "4", "galois_group": "C3", "inertia_group": "C3", '
    '"polynomial": "x^3 - 3*x^2 + 21", "quadratic_subextension": null}, '
    '{"class_id": "sqrtm3-tau-1", "disc_exponent": "5", "galois_group": "S3", "inertia_group": "S3", '
    '"polynomial": "x^3 + 3", "quadratic_subextension": "Q3(sqrt(-3))"}, '
    '{"class_id": "sqrtm3-tau-4", "disc_exponent": "5", "galois_group": "S3", "inertia_group": "S3", '
    '"polynomial": "x^3 + 12", "quadratic_subextension": "Q3(sqrt(-3))"}, '
    '{"class_id": "sqrtm3-tau-7", "disc_exponent": "5", "galois_group": "S3", "inertia_group": "S3", '
    '"polynomial": "x^3 + 21", "quadratic_subextension": "Q3(sqrt(-3))"}]'
)


def table_rows() -> list[dict]:
    """Classify each ramified canonical cubic and read its invariants off the result."""
    rows = []
    for cid in TABLE_ORDER:
        poly = wild3.CANONICAL[cid]
        label, _ = wild3.classify_cubic_q3(poly)
        if label.class_id != cid:
            raise InternalInconsistency(f"{poly.to_expr()} classified as {label.class_id}")
        inv = label.invariants
        rows.append({
            "class_id": cid, "polynomial": poly.to_expr(), "disc_exponent": inv.disc_exponent,
            "galois_group": inv.galois_group, "inertia_group": inv.inertia_group,
            "quadratic_subextension": inv.quadratic_subextension,
        })
    return rows


def cmd_table(args) -> int:
    if args.p != 3:
        raise Unsupported("the table is only available for p = 3")
    rows = table_rows()
    rendered = json.dumps(_jsonable(rows), sort_keys=True)
    if rendered != TABLE_GOLDEN:
        print("table mismatch against the embedded expected copy", file=sys.stderr)
        print(rendered)
        return 4
    if args.json:
        print(rendered)
        return 0
    header = ("polynomial", "disc", "group", "inertia", "quadratic subextension")
    body = [(r["polynomial"], str(r["disc_exponent"]), r["galois_group"], r["inertia_group"],
             r["quadratic_subextension"] or "-") for r in rows]
    widths = [max(len(x[i]) for x in [header, *body]) for i in range(len(header))]
    for row in [header, *body]:
        print("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return 0


def expected_class_count(p: int, q: int, m: int = 1) -> int:
    if p == 3 and q == 3 and m == 1:
        return len(wild3.CLASS_IDS)
    return math.gcd(q, p**m - 1) + 1


def _verify_one(job):
    f, p, q, precision = job
    try:
        if p == 3 and q == 3:
            label, _ = wild3.classify_cubic_q3(f)
            cid, canonical = label.class_id, label.canonical
        else:
            label, _ = tame.classify_tame_prime(f, p, q)
            cid, canonical = label.class_id, label.canonical
        ok = oracle.oracle_isomorphic(f, canonical, p, precision)
        return f.to_expr(), cid, ok, None
    except PadicExtError as exc:
        return f.to_expr(), None, False, f"{type(exc).__name__}: {exc}"


def cmd_verify(args) -> int:
    q = args.degree
    if not (args.p == 3 and q == 3) and (q == args.p or not is_prime(q)):
        raise Unsupported(f"no classifier for degree {q} over p = {args.p}")
    height = args.height or args.p ** (6 if args.p == 3 else 4)
    corpus = oracle.generate_corpus(oracle.CorpusSpec(args.p, q, height, args.count, args.seed))
    results = _map(_verify_one, [(f, args.p, q, _default_precision(args)) for f in corpus], args.jobs)
    hist = Counter(cid for _, cid, ok, _ in results if cid)
    agree = sum(1 for _, _, ok, _ in results if ok)
    failures = [(src, cid, err) for src, cid, ok, err in results if not ok]
    expected = expected_class_count(args.p, q)
    report = {"p": args.p, "degree": q, "count": len(results), "agreement": agree,
              "classes": dict(sorted(hist.items())), "expected_class_count": expected,
              "failures": [{"input": s, "class_id": c, "error": e} for s, c, e in failures]}
    if args.json:
        print(json.dumps(_jsonable(report), sort_keys=True))
    else:
        print(f"agreement {agree}/{len(results)}")
        print(f"classes observed {len(hist)} (expected {expected})")
        for cid, n in sorted(hist.items()):
            print(f"  {cid:20s} {n}")
        for s, c, e in failures:
            print(f"  FAIL {s}: {c} {e or 'oracle disagrees'}")
    if failures:
        return 5 if all(e and "Inconclusive" in e for _, _, e in failures) else 4
    return 0 if len(hist) == expected else 4


def cmd_gen_corpus(args) -> int:
    height = args.height or args.p ** (6 if args.p == 3 else 4)
    spec = oracle.CorpusSpec(args.p, args.degree, height, args.count, args.seed)
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        for f in oracle.generate_corpus(spec):
            print(f.to_expr(), file=out)
    finally:
        if args.out:
            out.close()
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="padicext", description="Classify p-adic field extensions.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify the extension generated by a polynomial")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--m", type=int, default=1, help="degree of the unramified base over Q_p")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--poly", help='expression such as "x^3 + 3*x + 3" or coefficients "3,3,0,1"')
    src.add_argument("--file", help="one polynomial per line; blank lines and # comments skipped")
    c.add_argument("--json", action="store_true")
    c.add_argument("--certificate", action="store_true", help="print the certificate in text mode")
    c.add_argument("--oracle-check", action="store_true")
    c.add_argument("--precision", type=int)
    c.add_argument("--jobs", type=int, default=1)
    c.set_defaults(func=cmd_classify)

    t = sub.add_parser("table", help="regenerate the table of ramified cubic extensions of Q_3")
    t.add_argument("--p", type=int, default=3)
    t.add_argument("--json", action="store_true")
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", help="cross-check classifier and oracle on a random corpus")
    v.add_argument("--p", type=int, required=True)
    v.add_argument("--degree", type=int, default=3)
    v.add_argument("--count", type=int, default=100)
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--height", type=int)
    v.add_argument("--precision", type=int)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gen-corpus", help="print a certified random corpus")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--degree", type=int, default=3)
    g.add_argument("--count", type=int, default=100)
    g.add_argument("--seed", type=int, default=42)
    g.add_argument("--height", type=int)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen_corpus)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PadicExtError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

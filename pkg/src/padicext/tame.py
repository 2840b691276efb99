"""
Tamely ramified extensions of prime degree q != p over an unramified base K
of degree m over Q_p.

Everything is read off the discriminant: the extension is unramified exactly
when q(q-1) divides v(Disc), and otherwise the class is the unique r mod d with
zeta^r * u^l a q-th power in the residue field.  Labels depend on the choice
of zeta, fixed by :func:`padicext.padic.teichmuller_generator`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import DomainError, InternalInconsistency, RejectedInput, Unsupported
from .exactnum import inverse_mod, is_prime, residue_mod, unit_part, val_p
from .padic import (
    ResidueField,
    UnramifiedField,
    default_modulus,
    is_irreducible_mod_p,
    teichmuller_generator,
)
from .polyring import IrreducibilityCertificate, Poly, certify_irreducible, discriminant


@dataclass(frozen=True)
class TameClassLabel:
    kind: str  # "unramified" | "ramified"
    r: Optional[int]
    d: int
    canonical: Optional[Poly]
    canonical_expr: str
    zeta: tuple  # residue of the generator used for the r-label

    @property
    def class_id(self) -> str:
        return "unramified" if self.kind == "unramified" else f"ramified-r-{self.r}"


@dataclass(frozen=True)
class TameCertificate:
    v_delta: int
    u: Fraction
    ell: Optional[int]
    transcript: tuple = ()  # ((r, residue of zeta^r u^l, verdict), ...)
    irreducibility: Optional[IrreducibilityCertificate] = None
    notes: dict = field(default_factory=dict)


@lru_cache(maxsize=None)
def _residue_field(p: int, m: int) -> ResidueField:
    return ResidueField(p, default_modulus(p, m))


@lru_cache(maxsize=None)
def canonical_zeta(p: int, m: int = 1) -> tuple:
    """Residue of the canonical primitive (p^m - 1)-th root of unity."""
    return teichmuller_generator(UnramifiedField(p, m, N=4)).residue


def _check_base(p: int, m: int, n: int) -> None:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if m < 1:
        raise DomainError("base degree m must be positive")
    if n % p == 0:
        raise Unsupported(f"degree {n} is divisible by p={p}; the extension is not tame")


def _certify(f: Poly, p: int, m: int) -> IrreducibilityCertificate:
    cert = certify_irreducible(f, p)
    if cert.kind == "reducible":
        raise RejectedInput(f"{f.to_expr()} is reducible over Q_{p}", cert.witness)
    if not cert.certified:
        raise RejectedInput(f"irreducibility of {f.to_expr()} over Q_{p} could not be certified")
    # an irreducible of degree n over Q_p stays irreducible over K when gcd(n, m) = 1;
    # Eisenstein shapes stay irreducible over every unramified base
    if m > 1 and math.gcd(f.degree, m) != 1 and cert.kind != "eisenstein-segment":
        raise RejectedInput(f"irreducibility of {f.to_expr()} over the degree-{m} base is not certified")
    return cert


def _is_nth_power(rf: ResidueField, x: tuple, n: int) -> bool:
    size = rf.size - 1
    return rf.pow(x, size // math.gcd(n, size)) == rf.one


def _disc_data(f: Poly, p: int) -> tuple[int, Fraction]:
    delta = discriminant(f)
    if delta == 0:
        raise RejectedInput(f"{f.to_expr()} is inseparable")
    v, u = unit_part(delta, p)
    return v, u


def is_unramified_prime_degree(f: Poly, p: int, q: int, m: int = 1) -> bool:
    if f.degree != q or not is_prime(q):
        raise DomainError("expected a polynomial of prime degree q")
    _check_base(p, m, q)
    _certify(f, p, m)
    v, _ = _disc_data(f, p)
    return v % (q * (q - 1)) == 0


def unramified_canonical(p: int, q: int, m: int = 1) -> tuple[Optional[Poly], str]:
    """x^q - x + c for the least c giving an irreducible reduction, else the default modulus."""
    if math.gcd(q, m) != 1:
        # no polynomial over F_p of degree q stays irreducible over F_{p^m}
        return None, f"unramified degree-{q} extension of the degree-{m} base"
    for c in range(p):
        coeffs = [c, p - 1] + [0] * (q - 2) + [1]
        if is_irreducible_mod_p(coeffs, p):
            poly = Poly([c, -1] + [0] * (q - 2) + [1])
            return poly, poly.to_expr()
    poly = Poly(default_modulus(p, q))
    return poly, poly.to_expr()


def _ramified_canonical(p: int, m: int, n: int, zeta: tuple, r: int) -> tuple[Optional[Poly], str]:
    rf = _residue_field(p, m)
    zr = rf.pow(zeta, r)
    if not any(zr[1:]):
        # zeta^r lies in F_p: an integer lift c gives an isomorphic x^n - c p, since
        # units congruent to 1 mod p are n-th powers when p does not divide n
        c = zr[0]
        poly = Poly([-c * p] + [0] * (n - 1) + [1])
        return poly, poly.to_expr()
    return None, f"x^{n} - zeta^{r}*{p}"


def _r_search(p: int, m: int, n: int, v: int, u: Fraction, strict: bool):
    if v % (n - 1):
        msg = f"v(Disc) = {v} is not divisible by n - 1 = {n - 1}"
        raise (InternalInconsistency if strict else RejectedInput)(msg)
    ell = inverse_mod((v // (n - 1)) % n, n)
    rf = _residue_field(p, m)
    zeta = canonical_zeta(p, m)
    d = math.gcd(n, rf.size - 1)
    base = rf.pow(rf.from_int(residue_mod(u, p)), ell)
    if n % 4 == 0:
        base = rf.sub(rf.zero, base)
    transcript = []
    hits = []
    for r in range(d):
        val = rf.mul(rf.pow(zeta, r), base)
        ok = _is_nth_power(rf, val, n)
        transcript.append((r, val, ok))
        if ok:
            hits.append(r)
    if len(hits) != 1:
        raise InternalInconsistency(f"r-search found {len(hits)} admissible labels, expected exactly one")
    return hits[0], ell, d, zeta, tuple(transcript)


def classify_tame_prime(f: Poly, p: int, q: int, m: int = 1) -> tuple[TameClassLabel, TameCertificate]:
    if f.degree != q or not is_prime(q):
        raise DomainError(f"expected a polynomial of prime degree, got degree {f.degree}")
    _check_base(p, m, q)
    cert = _certify(f, p, m)
    v, u = _disc_data(f, p)
    rf = _residue_field(p, m)
    d = math.gcd(q, rf.size - 1)
    if v % (q * (q - 1)) == 0:
        poly, expr = unramified_canonical(p, q, m)
        label = TameClassLabel("unramified", None, d, poly, expr, canonical_zeta(p, m))
        return label, TameCertificate(v, u, None, (), cert)
    r, ell, d, zeta, transcript = _r_search(p, m, q, v, u, strict=cert.kind == "eisenstein-segment")
    poly, expr = _ramified_canonical(p, m, q, zeta, r)
    label = TameClassLabel("ramified", r, d, poly, expr, zeta)
    return label, TameCertificate(v, u, ell, transcript, cert)


def classify_totally_ramified(
    f: Poly, p: int, n: int, m: int = 1, assume_totally_ramified: bool = False
) -> TameClassLabel:
    """
    Label of a totally ramified degree-n extension, p not dividing n.  Without
    an Eisenstein certificate the caller must vouch for total ramification.
    """
    if f.degree != n:
        raise DomainError("degree mismatch")
    _check_base(p, m, n)
    cert = certify_irreducible(f, p)
    if cert.kind == "reducible":
        raise RejectedInput(f"{f.to_expr()} is reducible over Q_{p}", cert.witness)
    strict = cert.kind == "eisenstein-segment"
    if not strict and not assume_totally_ramified:
        raise RejectedInput("total ramification is not certified")
    v, u = _disc_data(f, p)
    r, _, d, zeta, _ = _r_search(p, m, n, v, u, strict)
    poly, expr = _ramified_canonical(p, m, n, zeta, r)
    return TameClassLabel("ramified", r, d, poly, expr, zeta)


def same_tame_extension(f: Poly, g: Poly, p: int, n: int, m: int = 1) -> bool:
    """Isomorphism test for two totally tamely ramified degree-n extensions."""
    if f.degree != n or g.degree != n:
        raise DomainError("degree mismatch")
    _check_base(p, m, n)
    params = []
    for h in (f, g):
        v, u = _disc_data(h, p)
        if v % (n - 1):
            raise RejectedInput(f"{h.to_expr()} does not generate a totally tamely ramified extension")
        params.append((inverse_mod((v // (n - 1)) % n, n), u))
    (ell, u), (s, w) = params
    sign = -1 if ((s - ell) * (1 + n * (n - 1) // 2)) % 2 else 1
    rf = _residue_field(p, m)
    x = residue_mod(sign * u**ell / w**s, p)
    return _is_nth_power(rf, rf.from_int(x), n)

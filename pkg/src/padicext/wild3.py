"""
Cubic extensions of Q_3.

There are ten classes: the unramified cubic and nine wildly ramified ones.
:func:`classify_cubic_q3` decides the class in three steps.  An unramified
test comes first.  Then the square class of the discriminant picks the
branch.  Last, a mod-9 congruence on the normalized depressed coefficients
picks tau.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import DomainError, InternalInconsistency, PreconditionViolation, RejectedInput
from .exactnum import INFINITY, is_square_unit_q3, residue_mod, unit_part, val_p
from .padic import UnramifiedField, integral_model
from .polyring import Poly, certify_irreducible, depressed_transform, discriminant

# W = Q_3[y]/(y^3 - y + 1), the unramified cubic extension
TOWER_MODULUS = (1, -1, 0, 1)

TAUS = (1, 4, 7)

CANONICAL: dict[str, Poly] = {
    "unramified": Poly([1, -1, 0, 1]),
    "nongalois-sqrtm1": Poly([3, 0, 3, 1]),
    "nongalois-sqrt3": Poly([3, 6, 0, 1]),
    **{f"galois-tau-{t}": Poly([3 * t, 0, -3, 1]) for t in TAUS},
    "sqrtm3-wild": Poly([3, 3, 0, 1]),
    **{f"sqrtm3-tau-{t}": Poly([3 * t, 0, 0, 1]) for t in TAUS},
}

CLASS_IDS = tuple(CANONICAL)


def tau_from_residue(t) -> int:
    """The tau in {1, 4, 7} with +-tau congruent to t mod 9."""
    r = residue_mod(t, 9)
    for tau in TAUS:
        if r in (tau, 9 - tau):
            return tau
    raise InternalInconsistency(f"{t} is not a 3-adic unit; no tau matches")


# ---------------------------------------------------------------------------
# field invariants


@dataclass(frozen=True)
class FieldInvariants:
    e: int
    f: int
    galois_group: str
    inertia_group: str
    disc_exponent: int
    quadratic_subextension: Optional[str]


def quadratic_subextension(v: int, u: Fraction) -> Optional[str]:
    """Q_3(sqrt(Disc)) for Disc = 3^v u, or None when Disc is a square."""
    square_u = is_square_unit_q3(u)
    if v % 2 == 0:
        return None if square_u else "Q3(sqrt(-1))"
    return "Q3(sqrt(3))" if square_u else "Q3(sqrt(-3))"


@lru_cache(maxsize=None)
def field_invariants(class_id: str) -> FieldInvariants:
    if class_id not in CANONICAL:
        raise DomainError(f"unknown class id {class_id!r}")
    if class_id == "unramified":
        return FieldInvariants(1, 3, "C3", "1", 0, None)
    g = CANONICAL[class_id]
    # each ramified canonical polynomial is Eisenstein, so its discriminant is the field's
    v, u = unit_part(discriminant(g), 3)
    quad = quadratic_subextension(v, u)
    galois = "C3" if quad is None else "S3"
    # a ramified quadratic subextension makes the whole closure totally ramified
    inertia = "S3" if quad in ("Q3(sqrt(3))", "Q3(sqrt(-3))") else "C3"
    return FieldInvariants(3, 1, galois, inertia, v, quad)


@dataclass(frozen=True)
class Cubic3ClassLabel:
    class_id: str

    def __post_init__(self):
        if self.class_id not in CANONICAL:
            raise DomainError(f"unknown class id {self.class_id!r}")

    @property
    def canonical(self) -> Poly:
        return CANONICAL[self.class_id]

    @property
    def invariants(self) -> FieldInvariants:
        return field_invariants(self.class_id)

    @property
    def tau(self) -> Optional[int]:
        return int(self.class_id.rsplit("-", 1)[1]) if "-tau-" in self.class_id else None


@dataclass
class Cubic3Certificate:
    irreducibility: str
    unramified_test: str
    v_delta: Optional[int] = None
    u_delta: Optional[Fraction] = None
    branch: Optional[str] = None
    shift_t: Optional[Fraction] = None
    scale_s: Optional[int] = None
    alpha: Optional[Fraction] = None
    beta: Optional[Fraction] = None
    m: Optional[int] = None
    r: Optional[float] = None
    u: Optional[Fraction] = None
    w: Optional[Fraction] = None
    case: Optional[str] = None
    congruence_value: Optional[Fraction] = None
    residue_mod_9: Optional[int] = None


# ---------------------------------------------------------------------------
# closed forms on the normalized depressed cubic x^3 + alpha x + beta


def _unit(x: Fraction) -> Fraction:
    return unit_part(x, 3).unit


def galois_t(alpha, beta) -> Fraction:
    alpha, beta = Fraction(alpha), Fraction(beta)
    if beta == 0:
        raise DomainError("beta must be nonzero")
    vb, u = unit_part(beta, 3)
    if vb % 3 == 0:
        if alpha == 0:
            raise InternalInconsistency("alpha = 0 with 3 | v(beta) cannot give a Galois wild extension")
        w = _unit(alpha)
        ru = residue_mod(u, 9)
        if ru == 1:
            t = w + (1 - u) / 3
        elif ru == 8:
            t = w + (1 + u) / 3
        else:
            raise InternalInconsistency(f"unit part {u} of beta is not +-1 mod 9; not a Galois wild cubic")
    elif vb % 3 == 1:
        t = u
    else:
        t = u * u
    if val_p(t, 3) != 0:
        raise InternalInconsistency(f"t = {t} is not a 3-adic unit")
    return t


def nongalois_tau(alpha, beta) -> tuple[str, Optional[int], Optional[Fraction]]:
    """
    Returns ``(case, tau, value)``: case "1".."4" following the four-way split on
    v(beta) mod 3 and r; tau is None for the two cases landing on x^3 + 3x + 3.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    if beta == 0:
        raise DomainError("beta must be nonzero")
    vb, u = unit_part(beta, 3)
    r = val_p(alpha, 3)
    if r != INFINITY and not r - Fraction(2, 3) * vb > 0:
        raise RejectedInput("Newton polygon precondition fails; the input is not totally ramified")
    m = vb // 3
    if vb % 3 == 0:
        return "1", None, None
    if vb % 3 == 1 and r == 2 * m + 1:
        return "2", None, None
    w = _unit(alpha) if alpha else Fraction(0)
    if vb % 3 == 1:
        value = u if r == INFINITY else u / (1 - Fraction(3) ** (r - 2 * m - 1) * w)
        return "3", tau_from_residue(value), value
    value = 1 / u if r == INFINITY else (1 + w * Fraction(-3) ** (r - 2 * m - 1)) / u
    return "4", tau_from_residue(value), value


def normalize_depressed(f: Poly) -> tuple[Poly, Fraction, int]:
    """Depress f, then scale roots by 3^(-s) so that v_3(beta) lies in {0, 1, 2}."""
    g, t = depressed_transform(f)
    if g[0] == 0:
        raise RejectedInput(f"{f.to_expr()} has a rational root", {"root": -t})
    s = val_p(g[0], 3) // 3
    if s:
        g = g.scale_roots(Fraction(3) ** (-s))
    return g, t, s


# ---------------------------------------------------------------------------
# the classifier


def has_root_in_tower(f: Poly) -> bool:
    """Whether f has a root in the unramified cubic extension of Q_3."""
    from .padic import default_precision

    h, _ = integral_model(f.coeffs, 3)
    prec = default_precision(h, 3)
    ring = UnramifiedField(3, 3, TOWER_MODULUS, N=prec)
    return ring.find_root(h, target=prec // 2) is not None


def classify_cubic_q3(f: Poly) -> tuple[Cubic3ClassLabel, Cubic3Certificate]:
    if f.degree != 3:
        raise DomainError("expected a cubic")
    irr = certify_irreducible(f, 3)
    if irr.kind == "reducible":
        raise RejectedInput(f"{f.to_expr()} is reducible over Q_3", irr.witness)
    if not irr.certified:
        raise RejectedInput(f"irreducibility of {f.to_expr()} could not be certified")
    if irr.kind == "residue-irreducible":
        return Cubic3ClassLabel("unramified"), Cubic3Certificate(irr.kind, "residue-irreducible")
    # Eisenstein shapes are totally ramified; anything else needs the tower search
    if irr.kind != "eisenstein-segment" and has_root_in_tower(f):
        return Cubic3ClassLabel("unramified"), Cubic3Certificate(irr.kind, "root-in-tower")
    cert = Cubic3Certificate(irr.kind, "ramified")
    v, u = unit_part(discriminant(f), 3)
    cert.v_delta, cert.u_delta = v, u
    g, t, s = normalize_depressed(f)
    alpha, beta = g[1], g[0]
    cert.shift_t, cert.scale_s, cert.alpha, cert.beta = t, s, alpha, beta
    vb, ub = unit_part(beta, 3)
    cert.m = vb // 3
    cert.r = val_p(alpha, 3)
    cert.u = ub
    cert.w = _unit(alpha) if alpha else None

    even, square = v % 2 == 0, is_square_unit_q3(u)
    if even and not square:
        cert.branch = "nongalois-sqrtm1"
        return Cubic3ClassLabel("nongalois-sqrtm1"), cert
    if not even and square:
        cert.branch = "nongalois-sqrt3"
        return Cubic3ClassLabel("nongalois-sqrt3"), cert
    if even:
        cert.branch = "galois"
        tv = galois_t(alpha, beta)
        cert.congruence_value, cert.residue_mod_9 = tv, residue_mod(tv, 9)
        return Cubic3ClassLabel(f"galois-tau-{tau_from_residue(tv)}"), cert
    cert.branch = "sqrtm3"
    try:
        case, tau, value = nongalois_tau(alpha, beta)
    except RejectedInput as exc:
        # the input is irreducible and ramified, so the precondition must hold
        raise InternalInconsistency(str(exc)) from exc
    cert.case = case
    if tau is None:
        return Cubic3ClassLabel("sqrtm3-wild"), cert
    cert.congruence_value, cert.residue_mod_9 = value, residue_mod(value, 9)
    return Cubic3ClassLabel(f"sqrtm3-tau-{tau}"), cert


# ---------------------------------------------------------------------------
# Q_3(sqrt(-3)) utilities


@dataclass(frozen=True)
class QuadElem:
    """a + b*sqrt(-3) with rational a, b."""

    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def __add__(self, o):
        o = _as_quad(o)
        return QuadElem(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.a, -self.b)

    def __sub__(self, o):
        return self + (-_as_quad(o))

    def __rsub__(self, o):
        return _as_quad(o) - self

    def __mul__(self, o):
        o = _as_quad(o)
        return QuadElem(self.a * o.a - 3 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = QuadElem(1)
        for _ in range(e):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.a or self.b)

    def valuation(self):
        """Valuation normalized by v(sqrt(-3)) = 1."""
        if not self:
            return INFINITY
        return min(2 * val_p(self.a, 3), 2 * val_p(self.b, 3) + 1)

    def unit_part(self) -> tuple[int, "QuadElem"]:
        if not self:
            raise DomainError("zero has no unit part")
        v = self.valuation()
        x = self
        # x / sqrt(-3) = b - (a/3) sqrt(-3)
        for _ in range(v):
            x = QuadElem(x.b, -x.a / 3)
        return v, x

    def __str__(self):
        return f"{self.a} + {self.b}*sqrt(-3)"


SQRT_M3 = QuadElem(0, 1)


def _as_quad(x) -> QuadElem:
    return x if isinstance(x, QuadElem) else QuadElem(x)


def is_cube_quad(x: QuadElem) -> bool:
    v, u = _as_quad(x).unit_part()
    if v % 3:
        return False
    return residue_mod(u.a, 9) in (1, 8) and residue_mod(u.b, 9) == 0


def reduced_class_rep_trivial(x: QuadElem) -> bool:
    """Whether a unit of Z_3[sqrt(-3)] is congruent mod 9 to a rational integer."""
    x = _as_quad(x)
    if x.valuation() != 0:
        raise DomainError("expected a unit")
    return residue_mod(x.b, 9) == 0


def canonical_norm_group_reps(class_id: str) -> list:
    label = Cubic3ClassLabel(class_id)
    tau = label.tau
    if class_id.startswith("galois-tau-"):
        return [Fraction(1), Fraction(3 * tau), Fraction(9 * tau * tau)]
    if class_id.startswith("sqrtm3-tau-"):
        return [QuadElem(1), QuadElem(tau, 1), QuadElem(tau * tau - 3, 2 * tau)]
    if class_id == "sqrtm3-wild":
        cube = SQRT_M3**3
        return [QuadElem(1), 1 + cube, 1 + 2 * cube]
    raise PreconditionViolation(f"no norm group representatives recorded for {class_id}")

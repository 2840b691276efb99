"""
Dense univariate polynomials over Q with the local tools the classifiers need:
discriminants, depressed forms, Newton polygons, Eisenstein detection and
shifts, norm forms and irreducibility certificates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DomainError, PreconditionViolation
from .exactnum import INFINITY, residue_mod, val_p


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True)
class Poly:
    """Coefficients a_0, ..., a_n (lowest degree first); trailing zeros are trimmed."""

    coeffs: tuple

    def __init__(self, coeffs: Iterable):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Poly(self.coeffs[i])
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[i] + other[i] for i in range(n))

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return Poly(c * other for c in self.coeffs)
        if not self or not other:
            return Poly([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        result = Poly([1])
        for _ in range(e):
            result = result * self
        return result

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs))[1:] if self.degree > 0 else Poly([])

    def monic(self) -> "Poly":
        return self * (1 / self.lc)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.lc == 1

    def compose_linear(self, c, d) -> "Poly":
        """f(c x + d)."""
        lin = Poly([d, c])
        acc = Poly([])
        for a in reversed(self.coeffs):
            acc = acc * lin + Poly([a])
        return acc

    def scale_roots(self, c) -> "Poly":
        """Monic polynomial whose roots are ``c`` times the roots of this one."""
        c = Fraction(c)
        n = self.degree
        return Poly(a * c ** (n - i) for i, a in enumerate(self.coeffs)).monic()

    def to_expr(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = _frac_str(mag)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if mag == 1 else f"{_frac_str(mag)}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_expr()

    def __repr__(self):
        return f"Poly({self.to_expr()!r})"


# ---------------------------------------------------------------------------
# resultants


def _integer_rows(rows: list[list[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        den = math.lcm(*(c.denominator for c in row)) if row else 1
        out.append([int(c * den) for c in row])
    return out


def _bareiss_det(mat: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    n = len(mat)
    if n == 0:
        return 1
    a = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def sylvester_matrix(f: Poly, g: Poly) -> list[list[Fraction]]:
    m, n = f.degree, g.degree
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([Fraction(0)] * i + fc + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + gc + [Fraction(0)] * (size - n - 1 - i))
    return rows


def resultant(f: Poly, g: Poly) -> Fraction:
    if not f or not g:
        return Fraction(0)
    rows = sylvester_matrix(f, g)
    if not rows:
        return Fraction(1)
    dens = [math.lcm(*(c.denominator for c in row)) for row in rows]
    det = _bareiss_det(_integer_rows(rows))
    return Fraction(det, math.prod(dens))


def discriminant(f: Poly, p: Optional[int] = None) -> Fraction:
    """Discriminant via Res(f', f); ``p`` is accepted for interface symmetry and unused."""
    n = f.degree
    if n < 2:
        raise DomainError("discriminant needs degree at least 2")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f.derivative(), f) / f.lc


def depressed_transform(f: Poly) -> tuple[Poly, Fraction]:
    """(g, t) with g(x) = f(x - t)/a_n monic and free of the x^(n-1) term."""
    n = f.degree
    if n < 2:
        raise DomainError("depressed transform needs degree at least 2")
    t = f[n - 1] / (n * f.lc)
    return f.compose_linear(1, -t).monic(), t


# ---------------------------------------------------------------------------
# Newton polygons and Eisenstein shapes


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: tuple  # ((i, v_i), ...)
    slopes: tuple  # ((slope, length), ...)

    @property
    def single_segment(self) -> bool:
        return len(self.slopes) == 1


def newton_polygon(f: Poly, p: int) -> NewtonPolygon:
    pts = [(i, val_p(c, p)) for i, c in enumerate(f.coeffs) if c != 0]
    hull: list[tuple[int, int]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point if it lies on or above the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    slopes = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slopes.append((Fraction(y2 - y1, x2 - x1), x2 - x1))
    return NewtonPolygon(tuple(hull), tuple(slopes))


def is_k_eisenstein(f: Poly, p: int) -> Optional[int]:
    n = f.degree
    if n < 2 or val_p(f.lc, p) != 0:
        return None
    k = val_p(f[0], p)
    if k == INFINITY or not 1 <= k < n:
        return None
    for i in range(1, n):
        v = val_p(f[i], p)
        if v != INFINITY and v + Fraction(i * k, n) < k:
            return None
    return int(k)


@dataclass(frozen=True)
class EisensteinShiftData:
    k: int
    r: int
    t: Fraction
    shifted: Poly


def _eisenstein_rescale(g: Poly, p: int) -> Optional[tuple[int, int, Poly]]:
    """For monic g, try p**(r n) g(x / p**r) with the r that puts v(a_0) in [1, n)."""
    n = g.degree
    v0 = val_p(g[0], p)
    if v0 == INFINITY:
        return None
    k = v0 % n
    if k == 0:
        return None
    r = (k - v0) // n
    h = g.scale_roots(Fraction(p) ** r)
    kk = is_k_eisenstein(h, p)
    if kk is None:
        return None
    return kk, r, h


def eisenstein_shift(f: Poly, p: int) -> EisensteinShiftData:
    """Depress, then rescale by a power of p so the result is k-Eisenstein with gcd(k, n) = 1."""
    g, t = depressed_transform(f)
    found = _eisenstein_rescale(g, p)
    if found is None or math.gcd(found[0], g.degree) != 1:
        raise PreconditionViolation(
            f"{f.to_expr()} has no Eisenstein shift at p={p}; not totally tamely ramified"
        )
    k, r, h = found
    return EisensteinShiftData(k, r, t, h)


# ---------------------------------------------------------------------------
# norms


def norm_of_linear_shift(f: Poly, lam) -> Fraction:
    """N(theta + lam) for a root theta of f."""
    n = f.degree
    return (-1) ** n * f(-Fraction(lam)) / f.lc


def norm_of_quadratic_shift(f: Poly, lam) -> Fraction:
    """N(theta^2 + lam) for a root theta of the monic depressed cubic x^3 + alpha x + beta."""
    if f.degree != 3 or not f.is_monic() or f[2] != 0:
        raise DomainError("expected a monic depressed cubic")
    alpha, beta = f[1], f[0]
    lam = Fraction(lam)
    # f(s) f(-s) with s^2 = -lam
    return beta**2 + lam**3 - 2 * lam**2 * alpha + lam * alpha**2


# ---------------------------------------------------------------------------
# irreducibility


@dataclass(frozen=True)
class IrreducibilityCertificate:
    kind: str  # residue-irreducible | eisenstein-segment | cubic-no-root | quadratic-no-root | reducible | unverified
    witness: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.kind not in ("reducible", "unverified")


def _is_integral(f: Poly, p: int) -> bool:
    return all(val_p(c, p) >= 0 for c in f.coeffs)


def certify_irreducible(f: Poly, p: int) -> IrreducibilityCertificate:
    from .padic import UnramifiedField, default_precision, integral_model, is_irreducible_mod_p

    n = f.degree
    if n < 2:
        raise DomainError("irreducibility certificates need degree at least 2")
    g = f.monic()
    if _is_integral(g, p) and n <= 6:
        red = [residue_mod(c, p) for c in g.coeffs]
        if is_irreducible_mod_p(red, p):
            return IrreducibilityCertificate("residue-irreducible", {"reduction": red})
    candidates = [("monic", g, Fraction(0))]
    dep, t = depressed_transform(g)
    if dep != g:
        candidates.append(("depressed", dep, t))
    for form, h, shift in candidates:
        found = _eisenstein_rescale(h, p)
        if found and math.gcd(found[0], n) == 1:
            k, r, e = found
            return IrreducibilityCertificate(
                "eisenstein-segment",
                {"k": k, "n": n, "r": r, "t": shift, "form": form, "polynomial": e.to_expr()},
            )
    if n in (2, 3):
        h, s = integral_model(g.coeffs, p)
        prec = default_precision(h, p)
        ring = UnramifiedField(p, 1, N=prec)
        root = ring.find_root(h, target=prec // 2)
        if root is not None:
            approx = Fraction(root[0], p**s)
            return IrreducibilityCertificate(
                "reducible", {"root": approx, "modulus_exponent": prec // 2 - s}
            )
        kind = "cubic-no-root" if n == 3 else "quadratic-no-root"
        return IrreducibilityCertificate(kind, {"precision": prec})
    return IrreducibilityCertificate("unverified", {})

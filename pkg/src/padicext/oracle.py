"""
Brute-force isomorphism oracle, independent of the closed-form classifiers.

For monic integral ``h`` generating L = Q_p(theta), the ring of integers of L
is rebuilt directly.  A greedy digit-by-digit approximation of theta by
integers c either gets stuck on a non-integral valuation v(theta - c), and then
a power of theta - c divided by a power of p is a uniformizer whose minimal
polynomial is Eisenstein, or it finds a unit (theta - c)/p^k whose residue
lies outside F_p, which for prime degree generates the unramified extension.
Roots of a second polynomial are then searched for in that ring by residue
refinement and Newton iteration.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DomainError, InternalInconsistency, OracleInconclusive, RejectedInput, Unsupported
from .exactnum import INFINITY, inverse_mod, residue_mod, round_padic, val_p
from .padic import (
    ResidueField,
    TruncatedRingOps,
    UnramifiedField,
    _polymul_mod,
    _UnramifiedAdapter,
    default_precision,
    integral_model,
    refine_roots,
)
from .polyring import Poly, certify_irreducible, discriminant, is_k_eisenstein

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# exact arithmetic in Q[x]/(h)


class QuotientRing:
    """Exact arithmetic in Q[x]/(h) for a monic h; elements are coefficient tuples."""

    def __init__(self, h: Poly):
        if not h.is_monic():
            raise DomainError("quotient modulus must be monic")
        self.h = h
        self.n = h.degree

    def element(self, coeffs: Sequence) -> tuple:
        cs = [Fraction(c) for c in coeffs]
        return self.reduce(cs)

    def reduce(self, cs: list) -> tuple:
        n = self.n
        cs = list(cs) + [Fraction(0)] * max(0, n - len(cs))
        hc = self.h.coeffs
        for k in range(len(cs) - 1, n - 1, -1):
            c = cs[k]
            if c:
                for j in range(n):
                    cs[k - n + j] -= c * hc[j]
                cs[k] = Fraction(0)
        return tuple(cs[:n])

    def mul(self, a, b) -> tuple:
        out = [Fraction(0)] * (2 * self.n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return self.reduce(out)

    def pow(self, a, e: int) -> tuple:
        result = self.element([1])
        for _ in range(e):
            result = self.mul(result, a)
        return result

    def add(self, a, b) -> tuple:
        return tuple(x + y for x, y in zip(a, b))

    def scale(self, a, c) -> tuple:
        return tuple(x * c for x in a)

    def evaluate(self, g: Poly, a) -> tuple:
        acc = self.element([])
        for c in reversed(g.coeffs):
            acc = self.add(self.mul(acc, a), self.element([c]))
        return acc

    def matrix(self, a) -> list[list[Fraction]]:
        """Multiplication-by-a matrix; column j is a * x^j."""
        cols = []
        basis = self.element([1])
        xx = self.element([0, 1])
        for _ in range(self.n):
            cols.append(self.mul(a, basis))
            basis = self.mul(basis, xx)
        return [[cols[j][i] for j in range(self.n)] for i in range(self.n)]

    def charpoly(self, a) -> Poly:
        """Faddeev-LeVerrier on the multiplication matrix."""
        A = self.matrix(a)
        n = self.n
        coeffs = [Fraction(0)] * (n + 1)
        coeffs[n] = Fraction(1)
        M = [[Fraction(0)] * n for _ in range(n)]
        for k in range(1, n + 1):
            # M <- A M + c_{n-k+1} I
            AM = [[sum(A[i][t] * M[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
            for i in range(n):
                AM[i][i] += coeffs[n - k + 1]
            M = AM
            AM2 = [[sum(A[i][t] * M[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
            coeffs[n - k] = -sum(AM2[i][i] for i in range(n)) / k
        return Poly(coeffs)

    def norm(self, a) -> Fraction:
        return (-1) ** self.n * self.charpoly(a)[0]


@dataclass(frozen=True)
class QuotientElem:
    """sum coeffs[i] * theta^i in Q_p[x]/(f), each coefficient correct modulo p^precision."""

    coeffs: tuple
    p: int
    precision: int


# ---------------------------------------------------------------------------
# the totally ramified ring Z_p[x]/(E), E Eisenstein


class EisensteinRing(TruncatedRingOps):
    def __init__(self, E: Poly, p: int, N: int):
        if not E.is_monic() or is_k_eisenstein(E, p) != 1:
            raise InternalInconsistency(f"{E.to_expr()} is not 1-Eisenstein at {p}")
        self.p, self.N, self.pN = p, N, p**N
        self.n = E.degree
        self.E = tuple(residue_mod(c, self.pN) for c in E.coeffs)
        self.zero = (0,) * self.n
        self.one = (1,) + (0,) * (self.n - 1)
        self.residue_field = ResidueField(p, (0, 1))
        # p / pi = -(pi^(n-1) + E_{n-1} pi^(n-2) + ... + E_1) / (E_0 / p)
        e0 = residue_mod(E[0] / p, self.pN)
        inv = pow(e0, -1, self.pN)
        self._p_over_pi = tuple(-c * inv % self.pN for c in self.E[1:])
        # residue of the unit p / pi^n
        self._eps = -pow(residue_mod(E[0] / p, p), -1, p) % p

    def from_rational(self, x) -> tuple:
        return (residue_mod(x, self.pN),) + (0,) * (self.n - 1)

    def lift(self, r: tuple) -> tuple:
        return (r[0],) + (0,) * (self.n - 1)

    def add(self, a, b):
        return tuple((x + y) % self.pN for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.pN for x, y in zip(a, b))

    def scale(self, a, c: int):
        return tuple(x * c % self.pN for x in a)

    def mul(self, a, b):
        return _polymul_mod(a, b, self.E, self.pN)

    def val_e(self, a):
        """Valuation in units of 1/n."""
        best = INFINITY
        for i, x in enumerate(a):
            if x:
                v = 0
                while x % self.p == 0:
                    x //= self.p
                    v += 1
                best = min(best, self.n * v + i)
        return best

    def div_pi(self, a):
        """a / pi for a with positive valuation."""
        p = self.p
        if a[0] % p:
            raise DomainError("element is not divisible by the uniformizer")
        head = self.scale(self._p_over_pi, a[0] // p)
        tail = tuple(a[1:]) + (0,)
        return self.add(head, tail)

    def residue_of_quotient(self, c, j: int) -> int:
        """Residue of c / pi^j where v_e(c) == j."""
        q, i0 = divmod(j, self.n)
        unit = c[i0] // self.p**q
        return unit * pow(self._eps, q, self.p) % self.p

    def inv_unit(self, a):
        r = a[0] % self.p
        if not r:
            raise DomainError("element is not a unit")
        x = self.from_rational(pow(r, -1, self.p))
        two = self.from_rational(2)
        prec = 1
        while prec < self.n * self.N:
            x = self.mul(x, self.sub(two, self.mul(a, x)))
            prec *= 2
        return x


class _EisensteinAdapter:
    def __init__(self, ring: EisensteinRing):
        self.ring = ring
        self.e = ring.n
        self.residue_field = ring.residue_field
        self.precision = ring.N

    def val(self, a):
        v = self.ring.val_e(a)
        return v if v == INFINITY else Fraction(v, self.e)

    def shifted_residue(self, c, k: int, mu: int):
        return (self.ring.residue_of_quotient(c, mu - k),)

    def pi_power(self, k: int):
        pi = (0, 1) + (0,) * (self.e - 2) if self.e > 1 else self.ring.from_rational(self.ring.p)
        return self.ring.pow(pi, k)

    def quotient(self, num, den):
        ring = self.ring
        j = ring.val_e(den)
        if j == INFINITY:
            raise DomainError("division by zero")
        for _ in range(j):
            num, den = ring.div_pi(num), ring.div_pi(den)
        return ring.mul(num, ring.inv_unit(den))


# ---------------------------------------------------------------------------
# structure of L = Q_p[x]/(h)


@dataclass(frozen=True)
class FieldModel:
    kind: str  # "ramified" | "unramified"
    h: Poly  # monic integral model of f, root p^k theta
    k: int
    basis_elem: tuple  # pi or y0 as an element of Q[x]/(h)
    minpoly: Poly  # minimal polynomial of basis_elem


def field_model(f: Poly, p: int, max_steps: int = 400) -> FieldModel:
    hc, k = integral_model(f.coeffs, p)
    h = Poly(hc)
    n = h.degree
    c = 0
    for _ in range(max_steps):
        a = val_p(h(c), p)
        if a == INFINITY:
            raise RejectedInput(f"{f.to_expr()} has a rational root", {"root": Fraction(c, p**k)})
        if a % n:
            g = math.gcd(a, n)
            if g != 1:
                raise Unsupported("mixed ramification is outside the oracle's reach")
            b = inverse_mod(a % n, n)
            s = (a * b - 1) // n
            Q = QuotientRing(h)
            z = Q.element([-c, 1])
            pi = Q.scale(Q.pow(z, b), Fraction(1, p**s))
            E = Q.charpoly(pi)
            return FieldModel("ramified", h, k, pi, E)
        kk = a // n
        step = p**kk
        for d in range(1, p):
            if val_p(h(c + step * d), p) > a:
                c += step * d
                break
        else:
            # (theta - c) / p^kk has residue outside F_p
            if n > 1 and not _is_prime(n):
                raise Unsupported("residue degree detection needs prime degree")
            P0 = h.compose_linear(step, c).monic()
            Q = QuotientRing(h)
            y0 = Q.element([Fraction(-c, step), Fraction(1, step)])
            return FieldModel("unramified", h, k, y0, P0)
    raise OracleInconclusive("greedy approximation of the generator did not terminate")


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def _oracle_precision(f: Poly, g: Poly, p: int, N: Optional[int]) -> int:
    base = max(default_precision(f.monic().coeffs, p), default_precision(g.monic().coeffs, p))
    return max(base, N or 0)


def _locate_root(model: FieldModel, g: Poly, p: int, N: int):
    hg, kg = integral_model(g.coeffs, p)
    target = max(N // 2, 2)
    if model.kind == "ramified":
        ring = EisensteinRing(model.minpoly, p, N)
        adapter = _EisensteinAdapter(ring)
    else:
        try:
            ring = UnramifiedField(p, model.minpoly.degree, model.minpoly.coeffs, N=N)
        except DomainError as exc:
            raise InternalInconsistency(f"residue generator has reducible minimal polynomial: {exc}")
        adapter = _UnramifiedAdapter(ring)
    root = refine_roots(adapter, ring.poly_coeffs(hg), target)
    return root, kg, target


def find_root_in_quotient(g: Poly, f: Poly, p: int, N: Optional[int] = None) -> Optional[QuotientElem]:
    """A root of g in Q_p[x]/(f), written in the basis 1, theta, ..., theta^(n-1)."""
    if f.degree < 2 or g.degree < 1:
        raise DomainError("need deg f >= 2 and deg g >= 1")
    N = _oracle_precision(f, g, p, N)
    model = field_model(f, p)
    root, kg, target = _locate_root(model, g, p, N)
    if root is None:
        return None
    # back to the theta basis of the integral model, then of f itself
    Q = QuotientRing(model.h)
    acc = Q.element([])
    power = Q.element([1])
    for coeff in root:
        acc = Q.add(acc, Q.scale(power, coeff))
        power = Q.mul(power, model.basis_elem)
    acc = Q.scale(acc, Fraction(1, p**kg))
    coeffs = tuple(a * Fraction(p) ** (model.k * i) for i, a in enumerate(acc))
    # report the precision actually achieved: v(g(x)) read off the norm
    Qf = QuotientRing(f.monic())
    residual = Qf.norm(Qf.evaluate(g.monic(), Qf.element(coeffs)))
    prec = val_p(residual, p)
    prec = N if prec == INFINITY else int(prec // f.degree)
    return QuotientElem(coeffs, p, prec)


def has_root_in_field(g: Poly, f: Poly, p: int, N: Optional[int] = None) -> bool:
    N = _oracle_precision(f, g, p, N)
    return _locate_root(field_model(f, p), g, p, N)[0] is not None


def oracle_isomorphic(f: Poly, g: Poly, p: int, N: Optional[int] = None) -> bool:
    """For equal prime degree: Q_p(f) and Q_p(g) are isomorphic iff each has a root of the other."""
    if f.degree != g.degree:
        return False
    fwd = has_root_in_field(g, f, p, N)
    bwd = has_root_in_field(f, g, p, N)
    if fwd != bwd:
        raise InternalInconsistency(
            f"oracle directions disagree for {f.to_expr()} and {g.to_expr()} at p={p}"
        )
    return fwd


def unramified_tower_has_root(f: Poly, p: int, q: int, m: int = 1, N: Optional[int] = None) -> bool:
    """Root search for f in the unramified extension of degree q over the degree-m base."""
    hc, _ = integral_model(f.coeffs, p)
    N = max(N or 0, default_precision(hc, p))
    ring = UnramifiedField(p, m * q, N=N)
    return ring.find_root(hc, target=max(N // 2, 2)) is not None


# ---------------------------------------------------------------------------
# corpora


@dataclass(frozen=True)
class CorpusSpec:
    p: int
    degree: int
    height: int
    count: int
    seed: int = 42
    den_exponent: int = 0  # denominators p^j with 0 <= j <= den_exponent


def _random_coefficient(rng: random.Random, spec: CorpusSpec) -> Fraction:
    # half of the draws are forced to carry a power of p so ramified shapes are common
    if rng.random() < 0.5:
        num = rng.randint(-spec.height, spec.height)
    else:
        j = rng.randint(1, 4)
        bound = max(spec.height // spec.p**j, 1)
        num = spec.p**j * rng.randint(-bound, bound)
    j = rng.randint(0, spec.den_exponent) if spec.den_exponent else 0
    return Fraction(num, spec.p**j)


def generate_corpus(spec: CorpusSpec, max_draws: Optional[int] = None) -> list[Poly]:
    """Deterministic monic polynomials with a valid irreducibility certificate."""
    rng = random.Random(spec.seed)
    out: list[Poly] = []
    draws = 0
    limit = max_draws or 50 * spec.count + 100
    while len(out) < spec.count and draws < limit:
        draws += 1
        coeffs = [_random_coefficient(rng, spec) for _ in range(spec.degree)] + [Fraction(1)]
        f = Poly(coeffs)
        if coeffs[0] == 0 or discriminant(f) == 0:
            continue
        try:
            cert = certify_irreducible(f, spec.p)
        except OracleInconclusive:
            log.info("discarding %s: certificate search inconclusive", f.to_expr())
            continue
        if cert.certified:
            out.append(f)
        elif cert.kind == "unverified":
            log.info("discarding %s: irreducibility unverified", f.to_expr())
    return out

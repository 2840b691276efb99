"""
Truncated p-adic arithmetic and root finding in unramified extensions.

An :class:`UnramifiedField` models the ring of integers of ``Q_p[y]/(P)`` for
a monic ``P`` whose reduction mod p is irreducible, truncated mod ``p**N``.
Elements (``UnramElem``) are plain tuples of ``m`` integers in ``[0, p**N)``.
Degree 1 (``P = y``) is Z_p itself.

Root finding uses successive refinement on the residue field: at each node the
polynomial ``g(a + pi**k x)`` is normalised and reduced, its residue roots are
enumerated, and a simple residue root is lifted by Newton's method.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import DomainError, NoLiftError, OracleInconclusive
from .exactnum import INFINITY, is_prime, residue_mod, val_p

UnramElem = tuple  # tuple[int, ...] of length m


# ---------------------------------------------------------------------------
# approximations in Q_p


@dataclass(frozen=True)
class PadicApprox:
    """``mantissa * p**(-s)``, known modulo ``p**(N - s)``."""

    p: int
    N: int
    mantissa: int
    s: int = 0

    def __post_init__(self):
        if not 0 <= self.s <= self.N:
            raise DomainError("denominator exponent must lie in [0, N]")
        object.__setattr__(self, "mantissa", self.mantissa % self.p**self.N)

    @property
    def known_to(self) -> int:
        return self.N - self.s

    def to_fraction(self) -> Fraction:
        return Fraction(self.mantissa, self.p**self.s)

    def __eq__(self, other):
        if not isinstance(other, PadicApprox):
            return NotImplemented
        if self.p != other.p:
            return False
        prec = min(self.known_to, other.known_to)
        diff = self.to_fraction() - other.to_fraction()
        return diff == 0 or val_p(diff, self.p) >= prec

    def __hash__(self):
        # overlap equality ignores precision, so the hash must too
        return hash(self.p)


# ---------------------------------------------------------------------------
# residue fields


def is_irreducible_mod_p(coeffs: Sequence[int], p: int) -> bool:
    """Irreducibility over F_p of a monic polynomial, by exhaustive factor search."""
    n = len(coeffs) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    f = [c % p for c in coeffs]
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            if not _divides_mod_p(list(tail) + [1], f, p):
                continue
            return False
    return True


def _divides_mod_p(g: list[int], f: list[int], p: int) -> bool:
    rem = list(f)
    dg = len(g) - 1
    for i in range(len(rem) - 1, dg - 1, -1):
        c = rem[i] % p
        if c:
            for j in range(dg + 1):
                rem[i - dg + j] = (rem[i - dg + j] - c * g[j]) % p
    return not any(r % p for r in rem[:dg])


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Monic irreducible of degree m over F_p with least coefficient vector (c_0, ..., c_{m-1})."""
    for coeffs in itertools.product(range(p), repeat=m):
        if m > 1 and coeffs[0] == 0:
            continue
        if is_irreducible_mod_p(list(coeffs) + [1], p):
            return coeffs + (1,)
    raise AssertionError("unreachable: irreducibles exist in every degree")


# Moduli chosen by smallest_irreducible for p**m <= 343; regenerated in the test suite.
MODULUS_TABLE: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 1): (0, 1), (2, 2): (1, 1, 1), (2, 3): (1, 0, 1, 1), (2, 4): (1, 0, 0, 1, 1), (2, 5): (1, 0, 0, 1, 0, 1), (2, 6): (1, 0, 0, 0, 0, 1, 1), (2, 7): (1, 0, 0, 0, 0, 0, 1, 1), (2, 8): (1, 0, 0, 0, 1, 1, 0, 1, 1),
    (3, 1): (0, 1), (3, 2): (1, 0, 1), (3, 3): (1, 0, 2, 1), (3, 4): (1, 0, 1, 1, 1), (3, 5): (1, 0, 0, 0, 2, 1),
    (5, 1): (0, 1), (5, 2): (1, 1, 1), (5, 3): (1, 0, 1, 1),
    (7, 1): (0, 1), (7, 2): (1, 0, 1), (7, 3): (1, 0, 1, 1),
    (11, 1): (0, 1), (11, 2): (1, 0, 1),
    (13, 1): (0, 1), (13, 2): (1, 3, 1),
    (17, 1): (0, 1), (17, 2): (1, 1, 1),
}


@lru_cache(maxsize=None)
def default_modulus(p: int, m: int) -> tuple[int, ...]:
    if (p, m) in MODULUS_TABLE:
        return MODULUS_TABLE[(p, m)]
    return smallest_irreducible(p, m)


class ResidueField:
    """F_p[y]/(P) with elements encoded as tuples of residues."""

    def __init__(self, p: int, modulus: Sequence[int]):
        self.p = p
        self.modulus = tuple(c % p for c in modulus)
        self.m = len(self.modulus) - 1
        if self.modulus[-1] != 1:
            raise DomainError("residue field modulus must be monic")
        if not is_irreducible_mod_p(list(self.modulus), p):
            raise DomainError(f"modulus {modulus} is reducible mod {p}")
        self.size = p**self.m
        self.zero = (0,) * self.m
        self.one = (1,) + (0,) * (self.m - 1)
        self._table = None

    def from_int(self, a: int) -> tuple:
        return (a % self.p,) + (0,) * (self.m - 1)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def mul(self, a, b):
        return _polymul_mod(a, b, self.modulus, self.p)

    def pow(self, a, e: int):
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a):
        if not any(a):
            raise DomainError("zero is not invertible")
        return self.pow(a, self.size - 2)

    def elements(self) -> Iterable[tuple]:
        for tail in itertools.product(range(self.p), repeat=self.m):
            yield tuple(reversed(tail))

    def order(self, a) -> int:
        n = self.size - 1
        order = n
        for q in _prime_factors(n):
            while order % q == 0 and self.pow(a, order // q) == self.one:
                order //= q
        return order

    def evaluate(self, coeffs, x):
        acc = self.zero
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc

    def _all(self) -> np.ndarray:
        if self._table is None:
            self._table = np.array(list(self.elements()), dtype=np.int64).reshape(self.size, self.m)
        return self._table

    def roots(self, coeffs: Sequence[tuple]) -> list[tuple[tuple, int]]:
        """Roots in this field of a polynomial with coefficients here, with multiplicities."""
        coeffs = list(coeffs)
        while coeffs and not any(coeffs[-1]):
            coeffs.pop()
        if len(coeffs) <= 1:
            return []
        xs = self._all()
        acc = np.zeros_like(xs)
        for c in reversed(coeffs):
            acc = _vec_mul_mod(acc, xs, self.modulus, self.p)
            acc = (acc + np.array(c, dtype=np.int64)) % self.p
        hits = np.nonzero(~acc.any(axis=1))[0]
        found = []
        for idx in hits:
            r = tuple(int(v) for v in xs[idx])
            found.append((r, self._multiplicity(coeffs, r)))
        return found

    def _multiplicity(self, coeffs, r) -> int:
        mult = 0
        cur = list(coeffs)
        while len(cur) > 1:
            # synthetic division by (x - r)
            quot = [self.zero] * (len(cur) - 1)
            acc = self.zero
            for i in range(len(cur) - 1, 0, -1):
                acc = self.add(self.mul(acc, r), cur[i])
                quot[i - 1] = acc
            rem = self.add(self.mul(acc, r), cur[0])
            if any(rem):
                break
            mult += 1
            cur = quot
        return mult


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _polymul_mod(a, b, modulus, mod):
    """Product of coefficient tuples a, b reduced modulo a monic ``modulus`` and ``mod``."""
    m = len(modulus) - 1
    if m == 1:
        return ((a[0] * b[0]) % mod,)
    prod = [0] * (2 * m - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    for k in range(2 * m - 2, m - 1, -1):
        c = prod[k]
        if c:
            for j in range(m):
                prod[k - m + j] -= c * modulus[j]
    return tuple(c % mod for c in prod[:m])


def _vec_mul_mod(A: np.ndarray, B: np.ndarray, modulus, p: int) -> np.ndarray:
    m = len(modulus) - 1
    prod = np.zeros((A.shape[0], 2 * m - 1), dtype=np.int64)
    for i in range(m):
        prod[:, i : i + m] += A[:, i : i + 1] * B
    prod %= p
    for k in range(2 * m - 2, m - 1, -1):
        c = prod[:, k : k + 1]
        prod[:, k - m : k] -= c * np.array(modulus[:m], dtype=np.int64)
        prod %= p
    return prod[:, :m] % p


# ---------------------------------------------------------------------------
# unramified extensions


class TruncatedRingOps:
    """Polynomial helpers shared by rings whose elements are tuples mod p**N."""

    zero: tuple
    one: tuple

    def pow(self, a, e: int):
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def poly_eval(self, coeffs: Sequence[tuple], x):
        acc = self.zero
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc

    def poly_coeffs(self, coeffs) -> list[UnramElem]:
        """Map a rational/integer coefficient list into the ring."""
        return [c if isinstance(c, tuple) else self.from_rational(c) for c in coeffs]

    def taylor(self, coeffs: Sequence[tuple], a) -> list[UnramElem]:
        """Coefficients of g(a + x), by repeated synthetic division."""
        cur = list(coeffs)
        out = []
        while cur:
            acc = self.zero
            quot = []
            for c in reversed(cur):
                acc = self.add(self.mul(acc, a), c)
                quot.append(acc)
            out.append(quot.pop())
            cur = list(reversed(quot))
        return out


class UnramifiedField(TruncatedRingOps):
    """
    The unramified extension Q_p[y]/(modulus) of degree m, its integers
    truncated mod p**N.

    ``modulus`` is monic with p-integral rational coefficients and irreducible
    reduction; by default the table/search choice for (p, m).
    """

    def __init__(self, p: int, m: int = 1, modulus: Sequence | None = None, N: int = 20):
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        if m < 1:
            raise DomainError("degree must be positive")
        self.p = p
        self.m = m
        self.N = N
        self.pN = p**N
        if modulus is None:
            modulus = default_modulus(p, m)
        if len(modulus) != m + 1 or Fraction(modulus[-1]) != 1:
            raise DomainError("modulus must be monic of degree m")
        self.modulus_exact = tuple(Fraction(c) for c in modulus)
        self.modulus = tuple(residue_mod(c, self.pN) for c in self.modulus_exact)
        self.residue_field = ResidueField(p, [residue_mod(c, p) for c in self.modulus_exact])
        self.zero = (0,) * m
        self.one = (1,) + (0,) * (m - 1)

    def with_precision(self, N: int) -> "UnramifiedField":
        return UnramifiedField(self.p, self.m, self.modulus_exact, N)

    # ring operations -------------------------------------------------------

    def element(self, coeffs: Sequence) -> UnramElem:
        coeffs = list(coeffs) + [0] * (self.m - len(coeffs))
        return tuple(residue_mod(c, self.pN) for c in coeffs)

    def from_rational(self, x) -> UnramElem:
        return (residue_mod(x, self.pN),) + (0,) * (self.m - 1)

    def add(self, a, b):
        return tuple((x + y) % self.pN for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.pN for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x % self.pN for x in a)

    def mul(self, a, b):
        return _polymul_mod(a, b, self.modulus, self.pN)

    def scale(self, a, c: int):
        return tuple(x * c % self.pN for x in a)

    def val(self, a):
        """Valuation (v(p) = 1); ``inf`` for elements vanishing mod p**N."""
        v = INFINITY
        for x in a:
            if x:
                v = min(v, _int_val_capped(x, self.p, self.N))
        return v

    def divide_by_p_power(self, a, k: int):
        pk = self.p**k
        if any(x % pk for x in a):
            raise DomainError("element not divisible by the requested power of p")
        return tuple(x // pk for x in a)

    def residue(self, a) -> tuple:
        return tuple(x % self.p for x in a)

    def lift(self, r: tuple) -> UnramElem:
        return tuple(r)

    def inv_unit(self, a):
        """Inverse of a unit, by Newton iteration x <- x(2 - a x) from the residue inverse."""
        r = self.residue(a)
        if not any(r):
            raise DomainError("element is not a unit")
        x = self.lift(self.residue_field.inv(r))
        prec = 1
        two = self.from_rational(2)
        while prec < self.N:
            x = self.mul(x, self.sub(two, self.mul(a, x)))
            prec *= 2
        return x

    # root finding ----------------------------------------------------------

    def find_root(self, coeffs, target: int | None = None):
        """
        A root (mod p**target) in the integers of this field of a monic
        p-integral polynomial, or ``None`` when none exists.
        """
        g = self.poly_coeffs(coeffs)
        return refine_roots(_UnramifiedAdapter(self), g, target or max(self.N // 2, 1))

    def hensel_lift(self, coeffs, a0, N: int | None = None):
        """Newton lift of the seed ``a0``; requires v(f(a0)) > 2 v(f'(a0))."""
        g = self.poly_coeffs(coeffs)
        a0 = a0 if isinstance(a0, tuple) else self.from_rational(a0)
        dg = _derivative(self, g)
        fa, da = self.poly_eval(g, a0), self.poly_eval(dg, a0)
        if not self.val(fa) > 2 * self.val(da):
            raise NoLiftError(f"Newton criterion fails at seed {a0}")
        return newton_lift(_UnramifiedAdapter(self), g, a0, N or self.N // 2)


def _int_val_capped(x: int, p: int, cap: int) -> int:
    v = 0
    while x % p == 0 and v < cap:
        x //= p
        v += 1
    return v


def _derivative(ring, coeffs):
    return [ring.scale(c, i) for i, c in enumerate(coeffs)][1:]


# ---------------------------------------------------------------------------
# generic refinement over a discretely valued ring


class _UnramifiedAdapter:
    """Uniform interface consumed by :func:`refine_roots` (e = 1, pi = p)."""

    e = 1

    def __init__(self, field: UnramifiedField):
        self.ring = field
        self.residue_field = field.residue_field
        self.precision = field.N

    def shifted_residue(self, c, k: int, mu: int):
        """Residue of ``c * pi**k / pi**mu`` given v(c * pi**k) == mu / e."""
        f = self.ring
        # pi = p; v(c) = mu - k exactly
        return f.residue(f.divide_by_p_power(c, mu - k))

    def pi_power(self, k: int):
        return self.ring.from_rational(self.ring.p**k)

    def val(self, a):
        return self.ring.val(a)

    def quotient(self, num, den):
        """num/den where v(num) >= v(den); den nonzero."""
        f = self.ring
        v = f.val(den)
        if v == INFINITY:
            raise DomainError("division by zero")
        u = f.divide_by_p_power(den, v)
        return f.mul(f.divide_by_p_power(num, v), f.inv_unit(u))


def refine_roots(adapter, g: list, target: int, max_depth: int | None = None):
    """
    Search the integers of ``adapter.ring`` for a root of the monic integral
    polynomial ``g``.  Returns a root known to ``v(g(z)) >= target`` or ``None``.
    """
    ring = adapter.ring
    rf = adapter.residue_field
    e = adapter.e
    if max_depth is None:
        max_depth = e * max(adapter.precision - 2, 1) // 2
    stack = [(ring.zero, 0)]
    while stack:
        a, k = stack.pop()
        if k > max_depth:
            raise OracleInconclusive(f"root refinement exceeded depth {max_depth}")
        taylor = ring.taylor(g, a)
        vals = []
        for i, c in enumerate(taylor):
            v = adapter.val(c)
            vals.append(v + Fraction(k * i, e) if v != INFINITY else INFINITY)
        mu = min(vals)
        if mu == INFINITY or mu >= adapter.precision - 1:
            raise OracleInconclusive("working precision exhausted during root refinement")
        mu_e = int(mu * e)
        hbar = []
        for i, c in enumerate(taylor):
            if vals[i] == mu:
                hbar.append(adapter.shifted_residue(c, k * i, mu_e))
            else:
                hbar.append(rf.zero)
        pik = adapter.pi_power(k)
        for r, mult in rf.roots(hbar):
            z = ring.add(a, ring.mul(pik, ring.lift(r)))
            if mult == 1:
                return newton_lift(adapter, g, z, target)
            stack.append((z, k + 1))
    return None


def newton_lift(adapter, g, z, target: int):
    ring = adapter.ring
    dg = _derivative(ring, g)
    for _ in range(200):
        gz = ring.poly_eval(g, z)
        if adapter.val(gz) >= target:
            return z
        z = ring.sub(z, adapter.quotient(gz, ring.poly_eval(dg, z)))
    raise OracleInconclusive("Newton iteration did not reach the target precision")


# ---------------------------------------------------------------------------
# Q_p level helpers


def hensel_lift_root(coeffs: Sequence, a0, p: int, N: int) -> PadicApprox:
    """Lift a seed root of an integral polynomial over Z_p to precision p**N."""
    field = UnramifiedField(p, 1, N=2 * N + 2)
    root = field.hensel_lift(coeffs, a0, N)
    return PadicApprox(p, N, root[0] % p**N)


def integral_model(coeffs: Sequence, p: int) -> tuple[list[Fraction], int]:
    """
    Monic p-integral model of a polynomial: returns ``(h, k)`` with
    ``h(y) = p**(k n) f(y / p**k) / lc`` monic with p-integral coefficients,
    so roots of ``h`` are ``p**k`` times roots of ``f``.
    """
    coeffs = [Fraction(c) for c in coeffs]
    n = len(coeffs) - 1
    lc = coeffs[-1]
    monic = [c / lc for c in coeffs]
    k = 0
    for i, c in enumerate(monic[:-1]):
        if c:
            need = -val_p(c, p)
            if need > 0:
                k = max(k, -(-need // (n - i)))
    h = [c * Fraction(p) ** (k * (n - i)) for i, c in enumerate(monic)]
    return h, k


def has_root_in_unramified(coeffs: Sequence, p: int, m: int, N: int | None = None) -> bool:
    """Whether a polynomial over Q_p has a root in the unramified extension of degree m."""
    h, _ = integral_model(coeffs, p)
    if N is None:
        N = default_precision(h, p)
    field = UnramifiedField(p, m, N=N)
    return field.find_root(h, target=max(N // 3, 2)) is not None


def default_precision(coeffs: Sequence, p: int, extra: int = 0) -> int:
    from .polyring import Poly, discriminant

    f = Poly(coeffs)
    vd = val_p(discriminant(f), p) if f.degree >= 2 else 0
    if vd == INFINITY:
        raise DomainError("polynomial is inseparable")
    return 3 * vd + 4 * f.degree + 12 + extra


# ---------------------------------------------------------------------------
# roots of unity and power residues


@dataclass(frozen=True)
class TeichmullerGen:
    field: UnramifiedField
    element: UnramElem
    residue: tuple

    @property
    def order(self) -> int:
        return self.field.p**self.field.m - 1


def teichmuller_generator(field: UnramifiedField) -> TeichmullerGen:
    """
    The (p**m - 1)-th root of unity whose residue is the least coefficient
    vector of maximal multiplicative order, lifted to the field's precision.
    """
    rf = field.residue_field
    n = rf.size - 1
    for r in sorted(rf.elements()):
        if any(r) and rf.order(r) == n:
            break
    # x**n - 1 has simple roots mod p, so the lift is unique
    poly = [field.from_rational(-1)] + [field.zero] * (n - 1) + [field.one]
    zeta = field.hensel_lift(poly, field.lift(r), field.N)
    return TeichmullerGen(field, zeta, r)


def qth_power_residue(u, q: int, field: UnramifiedField) -> bool:
    """Whether the residue of the unit ``u`` is a q-th power in the residue field."""
    rf = field.residue_field
    r = field.residue(u) if isinstance(u, tuple) else rf.from_int(residue_mod(u, field.p))
    if not any(r):
        raise DomainError("q-th power residue test needs a unit")
    size = rf.size - 1
    d = math.gcd(q, size)
    return rf.pow(r, size // d) == rf.one

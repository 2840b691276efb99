"""
Exact rational arithmetic with p-adic valuations.

Rationals are plain :class:`fractions.Fraction` values (always reduced, with
positive denominator).  The valuation of zero is ``math.inf``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple, Union

from .errors import DomainError, NoInverseError

INFINITY = math.inf

RationalLike = Union[int, Fraction]


class UnitDecomposition(NamedTuple):
    valuation: int
    unit: Fraction


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")


def _int_val(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def val_p(x: RationalLike, p: int):
    """p-adic valuation of a rational; ``math.inf`` for zero."""
    _check_prime(p)
    x = Fraction(x)
    if x == 0:
        return INFINITY
    return _int_val(x.numerator, p) - _int_val(x.denominator, p)


def unit_part(x: RationalLike, p: int) -> UnitDecomposition:
    """Split ``x = p**v * u`` with ``u`` a p-adic unit."""
    x = Fraction(x)
    if x == 0:
        raise DomainError("zero has no unit part")
    v = val_p(x, p)
    return UnitDecomposition(v, x / Fraction(p) ** v)


def residue_mod(x: RationalLike, n: int) -> int:
    """Image of a rational in Z/nZ; the denominator must be invertible mod n."""
    x = Fraction(x)
    if math.gcd(x.denominator, n) != 1:
        raise DomainError(f"denominator of {x} is not invertible mod {n}")
    return x.numerator * pow(x.denominator, -1, n) % n


def _require_3_unit(u: RationalLike) -> Fraction:
    u = Fraction(u)
    if u == 0 or val_p(u, 3) != 0:
        raise DomainError(f"{u} is not a 3-adic unit")
    return u


def is_square_unit_q3(u: RationalLike) -> bool:
    """Squares in Z_3^x are exactly the units congruent to 1 mod 3."""
    return residue_mod(_require_3_unit(u), 3) == 1


def is_cube_unit_q3(u: RationalLike) -> bool:
    """Cubes in Z_3^x are exactly the units congruent to +-1 mod 9."""
    return residue_mod(_require_3_unit(u), 9) in (1, 8)


def inverse_mod(a: int, n: int) -> int:
    if n <= 0:
        raise DomainError("modulus must be positive")
    if math.gcd(a, n) != 1:
        raise NoInverseError(f"{a} has no inverse mod {n}")
    return pow(a, -1, n) if n > 1 else 0


def round_padic(x: RationalLike, p: int, prec: int) -> Fraction:
    """
    Replace ``x`` by a rational with p-power denominator agreeing with it to
    absolute precision ``p**prec`` (so ``val_p(x - result) >= prec``).
    """
    x = Fraction(x)
    if x == 0:
        return x
    den = x.denominator
    e = _int_val(den, p)
    if prec + e <= 0:
        return Fraction(0)
    unit_den = den // p**e
    mod = p ** (prec + e)
    return Fraction(x.numerator * pow(unit_den, -1, mod) % mod, p**e)

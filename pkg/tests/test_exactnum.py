import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padicext.errors import DomainError, NoInverseError
from padicext.exactnum import (
    inverse_mod,
    is_cube_unit_q3,
    is_square_unit_q3,
    round_padic,
    unit_part,
    val_p,
)

nonzero_ints = st.integers(min_value=-10**6, max_value=10**6).filter(bool)
rationals = st.fractions(max_denominator=10**4).filter(bool)
primes = st.sampled_from([2, 3, 5, 7, 11, 13])


@pytest.mark.parametrize("x,p,v", [(Fraction(9, 2), 3, 2), (-351, 3, 3), (Fraction(1, 25), 5, -2), (1, 7, 0)])
def test_val_p_values(x, p, v):
    assert val_p(x, p) == v


def test_val_of_zero_is_infinite():
    assert val_p(0, 5) == math.inf


def test_val_rejects_composite_modulus():
    with pytest.raises(DomainError):
        val_p(4, 6)


@pytest.mark.parametrize("x,p,expected", [(-351, 3, (3, -13)), (1, 7, (0, 1)), (Fraction(9, 2), 3, (2, Fraction(1, 2)))])
def test_unit_part_values(x, p, expected):
    assert tuple(unit_part(x, p)) == expected


def test_unit_part_of_zero():
    with pytest.raises(DomainError):
        unit_part(0, 3)


@given(rationals, rationals, primes)
def test_valuation_is_additive_and_ultrametric(x, y, p):
    assert val_p(x * y, p) == val_p(x, p) + val_p(y, p)
    if x + y:
        assert val_p(x + y, p) >= min(val_p(x, p), val_p(y, p))
        if val_p(x, p) != val_p(y, p):
            assert val_p(x + y, p) == min(val_p(x, p), val_p(y, p))


@given(rationals, primes)
def test_unit_part_round_trip(x, p):
    v, u = unit_part(x, p)
    assert val_p(u, p) == 0
    assert Fraction(p) ** v * u == x


@pytest.mark.parametrize("u,expected", [(4, True), (-13, False), (7, True)])
def test_square_units(u, expected):
    assert is_square_unit_q3(u) is expected


@pytest.mark.parametrize("u,expected", [(10, True), (2, False), (-8, True)])
def test_cube_units(u, expected):
    assert is_cube_unit_q3(u) is expected


def test_cube_test_matches_exhaustive_search_mod_27():
    cubes = {c**3 % 27 for c in range(27)}
    for u in range(27):
        if u % 3:
            assert is_cube_unit_q3(u) == (u in cubes)


def test_square_test_matches_exhaustive_search_mod_9():
    squares = {c * c % 9 for c in range(9)}
    for u in range(9):
        if u % 3:
            assert is_square_unit_q3(u) == (u in squares)


def test_rational_units_reduce_through_the_denominator():
    # 1/2 is -4 mod 9, not a cube; 1/8 = (1/2)^3 is
    assert not is_cube_unit_q3(Fraction(1, 2))
    assert is_cube_unit_q3(Fraction(1, 8))


def test_non_units_are_rejected():
    with pytest.raises(DomainError):
        is_cube_unit_q3(3)
    with pytest.raises(DomainError):
        is_square_unit_q3(Fraction(1, 3))


@pytest.mark.parametrize("a,n,inv", [(2, 3, 2), (1, 10, 1), (5, 9, 2)])
def test_inverse_mod(a, n, inv):
    assert inverse_mod(a, n) == inv


def test_inverse_mod_requires_coprime():
    with pytest.raises(NoInverseError):
        inverse_mod(6, 9)


@given(rationals, primes, st.integers(min_value=0, max_value=30))
def test_round_padic_stays_close(x, p, prec):
    y = round_padic(x, p, prec)
    assert x == y or val_p(x - y, p) >= prec
    assert y.denominator in {p**k for k in range(0, 40)}

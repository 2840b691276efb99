from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from padicext.polyring import Poly, discriminant
from padicext.errors import DomainError, NoLiftError
from padicext.padic import (
    MODULUS_TABLE,
    PadicApprox,
    ResidueField,
    UnramifiedField,
    default_modulus,
    has_root_in_unramified,
    hensel_lift_root,
    qth_power_residue,
    smallest_irreducible,
    teichmuller_generator,
)


def test_square_root_of_seven_mod_243():
    root = hensel_lift_root([-7, 0, 1], 1, 3, 5)
    assert root.mantissa**2 % 243 == 7
    assert root.mantissa % 3 == 1
    # the two square roots of 7 mod 243, found by brute force
    assert {a for a in range(243) if a * a % 243 == 7} == {68, 175}
    assert root.mantissa == 175


def test_exact_root_is_fixed():
    assert hensel_lift_root([-1, 0, 0, 1], 1, 5, 10).mantissa == 1


def test_no_lift_from_a_bad_seed():
    with pytest.raises(NoLiftError):
        hensel_lift_root([1, 0, 1], 1, 3, 5)


@given(st.integers(min_value=1, max_value=6))
def test_precision_monotonicity(extra):
    lo = hensel_lift_root([-2, 0, 0, 1], 3, 5, 6)
    hi = hensel_lift_root([-2, 0, 0, 1], 3, 5, 6 + extra)
    assert hi.mantissa % 5**6 == lo.mantissa
    assert lo == hi


def test_padic_approx_equality_uses_overlap():
    assert PadicApprox(3, 4, 10) == PadicApprox(3, 6, 10 + 81 * 2)
    assert PadicApprox(3, 4, 10) != PadicApprox(3, 4, 11)
    assert PadicApprox(3, 4, 10, s=1).to_fraction() == Fraction(10, 3)
    assert hash(PadicApprox(3, 4, 10)) == hash(PadicApprox(3, 6, 172))


@pytest.mark.parametrize("p,expected", [(7, 3), (3, 2), (5, 2), (13, 2)])
def test_teichmuller_generator_residues(p, expected):
    gen = teichmuller_generator(UnramifiedField(p, 1, N=12))
    assert gen.residue == (expected,)
    assert gen.field.pow(gen.element, p - 1) == gen.field.one


@pytest.mark.parametrize("p,m", [(2, 2), (3, 2), (5, 2), (7, 2), (2, 3), (3, 3)])
def test_teichmuller_generator_has_full_order(p, m):
    K = UnramifiedField(p, m, N=8)
    gen = teichmuller_generator(K)
    size = p**m - 1
    assert K.pow(gen.element, size) == K.one
    rf = K.residue_field
    for d in range(1, size):
        if size % d == 0:
            assert rf.pow(gen.residue, d) != rf.one


@pytest.mark.parametrize("u,q,expected", [(1, 3, True), (2, 3, False), (6, 3, True)])
def test_qth_power_residues_mod_7(u, q, expected):
    assert qth_power_residue(u, q, UnramifiedField(7, 1, N=4)) is expected


def test_qth_power_residue_rejects_non_units():
    with pytest.raises(DomainError):
        qth_power_residue(7, 3, UnramifiedField(7, 1, N=4))


@pytest.mark.parametrize("p,m,q", [(2, 2, 3), (3, 2, 2), (7, 1, 3), (13, 1, 3), (5, 2, 3), (7, 3, 3), (3, 5, 2)])
def test_qth_power_residue_matches_exhaustion(p, m, q):
    K = UnramifiedField(p, m, N=3)
    rf = K.residue_field
    powers = {rf.pow(x, q) for x in rf.elements() if any(x)}
    for x in rf.elements():
        if any(x):
            assert qth_power_residue(K.lift(x), q, K) == (x in powers)


def test_modulus_table_is_reproducible():
    for (p, m), modulus in MODULUS_TABLE.items():
        assert smallest_irreducible(p, m) == modulus
        assert p**m <= 343


def test_default_modulus_searches_beyond_the_table():
    assert default_modulus(19, 2) == smallest_irreducible(19, 2)


def test_reducible_modulus_is_rejected():
    with pytest.raises(DomainError):
        ResidueField(5, (4, 0, 1))  # y^2 - 1


def test_residue_field_roots_with_multiplicity():
    rf = ResidueField(5, (0, 1))
    # (x - 1)^2 (x - 3)
    coeffs = [(2,), (2,), (0,), (1,)]  # x^3 - 5x^2 + 7x - 3 mod 5
    assert sorted(rf.roots(coeffs)) == [((1,), 2), ((3,), 1)]


def test_unramified_roots_of_the_tower_modulus():
    K = UnramifiedField(3, 3, (1, -1, 0, 1), N=10)
    root = K.find_root([1, -1, 0, 1])
    assert root is not None
    assert K.val(K.poly_eval(K.poly_coeffs([1, -1, 0, 1]), root)) >= 5


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=3, max_size=3))
def test_roots_found_in_z_p_vanish(coeffs):
    K = UnramifiedField(5, 1, N=24)
    poly = coeffs + [1]
    assume(discriminant(Poly(poly)) != 0)
    root = K.find_root(poly, target=12)
    if root is not None:
        assert K.val(K.poly_eval(K.poly_coeffs(poly), root)) >= 12
    else:
        # no root mod 5 at all is the common reason; cross-check against residues
        simple = [a for a in range(5) if sum(c * a**i for i, c in enumerate(poly)) % 5 == 0
                  and sum(i * c * a ** (i - 1) for i, c in enumerate(poly) if i) % 5]
        assert not simple


def test_unramified_extension_root_search():
    # y^2 + 1 has no root in Q_3 but one in the quadratic unramified extension
    assert not has_root_in_unramified([1, 0, 1], 3, 1)
    assert has_root_in_unramified([1, 0, 1], 3, 2)
    assert has_root_in_unramified([1, -1, 0, 1], 3, 3)

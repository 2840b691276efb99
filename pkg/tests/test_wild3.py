from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padicext.errors import DomainError, InternalInconsistency, RejectedInput
from padicext.exactnum import is_square_unit_q3, residue_mod, unit_part
from padicext.polyring import Poly, discriminant
from padicext.wild3 import (
    CANONICAL,
    CLASS_IDS,
    SQRT_M3,
    QuadElem,
    canonical_norm_group_reps,
    classify_cubic_q3,
    field_invariants,
    galois_t,
    is_cube_quad,
    nongalois_tau,
    reduced_class_rep_trivial,
    tau_from_residue,
)


def P(*c):
    return Poly(c)


@pytest.mark.parametrize(
    "f,class_id",
    [
        (P(1, -1, 0, 1), "unramified"),
        (P(3, 3, 0, 1), "sqrtm3-wild"),
        (P(3, 9, 0, 1), "sqrtm3-tau-4"),
        (P(3, 0, -3, 1), "galois-tau-1"),
    ],
)
def test_classify_examples(f, class_id):
    assert classify_cubic_q3(f)[0].class_id == class_id


def test_certificate_of_the_tau_four_example():
    label, cert = classify_cubic_q3(P(3, 9, 0, 1))
    assert label.canonical == P(12, 0, 0, 1)
    assert (cert.v_delta, cert.m, cert.r, cert.case) == (5, 0, 2, "3")
    assert cert.residue_mod_9 in (4, 5)


def test_certificate_of_the_galois_example():
    _, cert = classify_cubic_q3(P(3, 0, -3, 1))
    assert (cert.alpha, cert.beta, cert.shift_t) == (-3, 1, -1)
    assert cert.congruence_value == -1


def test_reducible_cubic_is_rejected():
    with pytest.raises(RejectedInput) as info:
        classify_cubic_q3(P(-1, 0, 0, 1))
    assert info.value.witness["root"] % 3 == 1


@pytest.mark.parametrize("class_id", CLASS_IDS)
def test_canonical_polynomials_map_to_themselves(class_id):
    assert classify_cubic_q3(CANONICAL[class_id])[0].class_id == class_id


def test_galois_t_cases():
    assert galois_t(-3, 1) == -1
    assert galois_t(0, 3 * 5) == 5
    assert galois_t(0, 9 * 2) == 4
    with pytest.raises(InternalInconsistency):
        galois_t(3, 2)


def test_nongalois_tau_cases():
    assert nongalois_tau(0, 3) == ("3", 1, 1)
    assert nongalois_tau(0, 12)[:2] == ("3", 4)
    assert nongalois_tau(9, 3)[:2] == ("3", 4)
    assert nongalois_tau(3, 3)[:2] == ("2", None)
    assert nongalois_tau(0, 1)[:2] == ("1", None)
    assert nongalois_tau(0, 9 * 2)[:2] == ("4", 4)  # 1/2 = 5 mod 9, i.e. -4
    with pytest.raises(RejectedInput):
        nongalois_tau(1, 3)


def test_tau_map_is_total_and_sign_invariant():
    for r in range(9):
        if r % 3:
            tau = tau_from_residue(r)
            assert tau in (1, 4, 7) and tau_from_residue(9 - r) == tau
    with pytest.raises(InternalInconsistency):
        tau_from_residue(3)


def test_invariants_table():
    for tau in (1, 4, 7):
        assert field_invariants(f"galois-tau-{tau}").galois_group == "C3"
        inv = field_invariants(f"sqrtm3-tau-{tau}")
        assert (inv.disc_exponent, inv.quadratic_subextension) == (5, "Q3(sqrt(-3))")
    assert field_invariants("nongalois-sqrtm1").quadratic_subextension == "Q3(sqrt(-1))"
    assert field_invariants("nongalois-sqrtm1").inertia_group == "C3"
    assert field_invariants("nongalois-sqrt3").inertia_group == "S3"
    assert field_invariants("sqrtm3-wild").disc_exponent == 3
    assert field_invariants("unramified").f == 3
    with pytest.raises(DomainError):
        field_invariants("nonsense")


@given(st.integers(-200, 200), st.integers(-200, 200))
def test_galois_flag_matches_square_discriminant(a, b):
    f = P(3 * b + 3, 3 * a, 0, 1)
    if f[0] == 0 or discriminant(f) == 0:
        return
    try:
        label, cert = classify_cubic_q3(f)
    except RejectedInput:
        return
    if label.class_id == "unramified":
        return
    v, u = unit_part(discriminant(f), 3)
    galois = v % 2 == 0 and is_square_unit_q3(u)
    assert (label.invariants.galois_group == "C3") == galois


def test_quad_elem_arithmetic():
    assert SQRT_M3 * SQRT_M3 == QuadElem(-3)
    assert (SQRT_M3**3).valuation() == 3
    v, u = (QuadElem(-9, -9)).unit_part()
    assert v == 4 and u == QuadElem(-1, -1)


def test_cube_tests_in_the_quadratic_field():
    assert is_cube_quad(QuadElem(8))
    assert not is_cube_quad(SQRT_M3)
    assert is_cube_quad(QuadElem(1, 9))
    with pytest.raises(DomainError):
        is_cube_quad(QuadElem(0))


def test_cube_test_against_small_cubes():
    cubes = set()
    for a in range(27):
        for b in range(27):
            x = QuadElem(a, b) ** 3
            if x.valuation() == 0:
                cubes.add((residue_mod(x.a, 9), residue_mod(x.b, 9)))
    for a in range(9):
        for b in range(9):
            x = QuadElem(a, b)
            if x and x.valuation() == 0:
                assert is_cube_quad(x) == ((a, b) in cubes)


def test_reduced_class_triviality():
    assert reduced_class_rep_trivial(QuadElem(5))
    assert not reduced_class_rep_trivial(QuadElem(1, 1))
    assert reduced_class_rep_trivial(QuadElem(4, 9))
    with pytest.raises(DomainError):
        reduced_class_rep_trivial(SQRT_M3)


def test_norm_group_representatives():
    assert canonical_norm_group_reps("galois-tau-4") == [1, 12, 144]
    assert canonical_norm_group_reps("sqrtm3-tau-1") == [QuadElem(1), QuadElem(1, 1), QuadElem(-2, 2)]
    assert canonical_norm_group_reps("sqrtm3-wild") == [QuadElem(1), QuadElem(1, -3), QuadElem(1, -6)]

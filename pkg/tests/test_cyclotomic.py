from fractions import Fraction

import pytest

from pcikit import (
    AlgebraElement,
    CycloAlgebraElement,
    CycloNumber,
    InvariantError,
    PrimaryGroupSpec,
    SpecMismatchError,
    cyclo_mul,
    element,
    galois_apply,
    ramanujan_sum,
    ramanujan_sum_direct,
)
from pcikit.numtheory import cyclotomic_poly, divisors, euler_phi, poly_mul

C4 = PrimaryGroupSpec(2, ((2, 1),))


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(2) == (1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    # product over divisors reconstructs x^m - 1
    for m in range(1, 61):
        prod = [1]
        for d in divisors(m):
            prod = poly_mul(prod, list(cyclotomic_poly(d)))
        assert prod == [-1] + [0] * (m - 1) + [1]
        assert len(cyclotomic_poly(m)) - 1 == euler_phi(m)


def test_cyclo_mul():
    z4 = CycloNumber.zeta(4)
    assert cyclo_mul(z4, z4) == CycloNumber.from_rational(4, -1)
    assert cyclo_mul(CycloNumber.zeta(3), CycloNumber.zeta(3, 2)) == CycloNumber.one(3)
    a = CycloNumber.one(5) + CycloNumber.zeta(5)
    b = CycloNumber.one(5) + CycloNumber.zeta(5, 4)
    assert cyclo_mul(a, b) == CycloNumber(5, (1, 0, -1, -1))
    with pytest.raises(SpecMismatchError):
        cyclo_mul(CycloNumber.zeta(3), CycloNumber.zeta(4))


def test_galois_apply():
    a = CycloNumber(7, (1, 2, 0, Fraction(1, 3)))
    assert galois_apply(1, a) == a
    assert galois_apply(3, CycloNumber.zeta(4)) == -CycloNumber.zeta(4)
    assert galois_apply(3, galois_apply(2, a)) == galois_apply(6, a)
    with pytest.raises(InvariantError):
        galois_apply(2, CycloNumber.zeta(4))


def test_galois_apply_is_ring_homomorphism():
    a = CycloNumber(9, (1, -2, 3, 0, Fraction(2, 5), 1))
    b = CycloNumber(9, (0, 1, 1, -1, 2, Fraction(-1, 3)))
    for k in (2, 4, 5, 7, 8):
        assert galois_apply(k, a + b) == galois_apply(k, a) + galois_apply(k, b)
        assert galois_apply(k, cyclo_mul(a, b)) == cyclo_mul(
            galois_apply(k, a), galois_apply(k, b)
        )
        assert galois_apply(k, CycloNumber.from_rational(9, Fraction(3, 7))) == (
            CycloNumber.from_rational(9, Fraction(3, 7))
        )


def test_ramanujan_sum_values():
    assert ramanujan_sum(4, 2) == -2
    assert ramanujan_sum(5, 1) == -1
    for m in (1, 2, 3, 4, 6, 9, 12):
        assert ramanujan_sum(m, 0) == euler_phi(m)


def test_ramanujan_direct_agrees():
    for m in (1, 2, 3, 4, 5, 8, 9, 12, 15):
        for t in range(m):
            direct = ramanujan_sum_direct(m, t)
            assert direct.is_rational()
            assert direct.as_fraction() == ramanujan_sum(m, t)


def test_cyclo_number_json_round_trip():
    a = CycloNumber(8, (Fraction(1, 2), 0, Fraction(-3, 4), 5))
    data = a.to_json()
    assert data["m"] == 8 and len(data["coeffs"]) == euler_phi(8)
    assert CycloNumber.from_json(data) == a


def test_cyclo_algebra_rationality_and_coeffs():
    a = AlgebraElement.from_coeffs(C4, [1, Fraction(1, 2), 0, -2])
    lifted = CycloAlgebraElement.from_rational_element(a, 4)
    assert lifted.is_rational()
    assert lifted.rational_part() == a
    assert lifted.cyclo_coeff(1) == CycloNumber.from_rational(4, Fraction(1, 2))

    twisted = lifted.zeta_scale(1)
    assert not twisted.is_rational()
    assert twisted.cyclo_coeff(3) == CycloNumber(4, (0, -2))


def test_cyclo_algebra_product_and_translate():
    m = 4
    one = CycloAlgebraElement.one(C4, m)
    z = CycloAlgebraElement.monomial(C4, m, element(C4, (1,)), 1)
    assert z * one == z
    # (zeta*x)^4 = zeta^4 * x^4 = 1
    acc = one
    for _ in range(4):
        acc = acc * z
    assert acc == one
    moved = one.group_translate(element(C4, (2,)))
    assert moved == CycloAlgebraElement.monomial(C4, m, element(C4, (2,)), 0)


def test_cyclo_algebra_mixed_modulus_rejected():
    with pytest.raises(SpecMismatchError):
        CycloAlgebraElement.one(C4, 4) + CycloAlgebraElement.one(C4, 2)

from fractions import Fraction

import pytest

from src.domain.cycloarith import (
    ComplexInterval,
    CyclotomicNumber,
    GaloisElement,
    certified_sign,
    complex_conjugation,
    conjugate,
    embed,
    galois_apply,
    galois_group,
    norm_to_Q,
    units_mod,
)
from src.domain.errors import DivisionByZero, GroupMismatch, NotCoprime, PrecisionInsufficient

Z = CyclotomicNumber.zeta


def test_zeta4_squared_is_minus_one():
    assert Z(4) * Z(4) == -1


def test_sum_of_fifth_roots_vanishes():
    total = sum((Z(5, k) for k in range(5)), CyclotomicNumber.zero(5))
    assert total.is_zero


def test_inverse_of_one_minus_zeta3():
    a = 1 - Z(3)
    inv = a.inverse()
    assert a * inv == 1
    assert inv == (2 + Z(3)) / 3


def test_zero_has_no_inverse():
    with pytest.raises(DivisionByZero):
        CyclotomicNumber.zero(5).inverse()


def test_mixed_conductors_are_lifted():
    # ζ3·ζ4 = ζ12^7
    assert Z(3) * Z(4) == Z(12, 7)
    assert (Z(3) + Z(4)).n == 12


def test_rationals_compare_with_plain_numbers():
    assert CyclotomicNumber.from_rational(Fraction(1, 2), 7) == Fraction(1, 2)
    assert hash(CyclotomicNumber.from_rational(3, 5)) == hash(CyclotomicNumber.from_rational(3, 1))


@pytest.mark.parametrize("a", [Z(5), 1 + Z(5, 2), Z(7) - Z(7, 3)])
def test_galois_identity_element(a):
    assert galois_apply(GaloisElement(a.n, 1), a) == a


def test_complex_conjugation_on_zeta5():
    assert galois_apply(complex_conjugation(5), Z(5)) == Z(5, 4)
    assert conjugate(Z(5)) == Z(5, 4)


def test_galois_action_on_one_plus_zeta5():
    assert galois_apply(GaloisElement(5, 2), 1 + Z(5)) == 1 + Z(5, 2)


def test_galois_element_requires_unit():
    with pytest.raises(NotCoprime):
        GaloisElement(6, 3)


def test_galois_apply_is_ring_homomorphism():
    a, b = 1 + 2 * Z(8), Z(8, 3) - Fraction(1, 3)
    for omega in galois_group(8):
        assert galois_apply(omega, a * b) == galois_apply(omega, a) * galois_apply(omega, b)
        assert galois_apply(omega, a + b) == galois_apply(omega, a) + galois_apply(omega, b)


def test_conjugate_of_rational():
    q = CyclotomicNumber.from_rational(Fraction(-7, 3), 9)
    assert conjugate(q) == q


def test_norms():
    assert norm_to_Q(1 - Z(5)) == 5
    assert norm_to_Q(CyclotomicNumber.from_rational(2, 3)) == 4


def test_norm_is_multiplicative():
    a, b = 2 + Z(7), 1 - Z(7, 3)
    assert norm_to_Q(a * b) == norm_to_Q(a) * norm_to_Q(b)


def test_units_mod():
    assert units_mod(12) == (1, 5, 7, 11)
    assert len(galois_group(7)) == 6


def test_root_of_unity_detection():
    assert Z(5, 3).is_root_of_unity
    assert (-Z(5)).is_root_of_unity
    assert not (1 + Z(5)).is_root_of_unity


def test_embed_one_is_tight():
    x = embed(CyclotomicNumber.one(3))
    assert x.contains(1)
    assert x.radius < 1e-15


def test_embed_zeta4_encloses_i():
    assert embed(Z(4), GaloisElement(4, 1)).contains(1j)
    assert embed(Z(4), GaloisElement(4, 3)).contains(-1j)


def test_embed_real_part_of_zeta5():
    x = embed(Z(5) + Z(5, 4))
    assert x.contains(0.6180339887498949)
    assert certified_sign(x) == 1


def test_embedding_respects_products():
    a, b = 1 + Z(7, 2), 3 - Z(7)
    assert embed(a * b).overlaps(embed(a) * embed(b))


def test_certified_sign():
    assert certified_sign(ComplexInterval.exact(1)) == 1
    tau = sum((Z(5, k * k) for k in range(5)), CyclotomicNumber.zero(5))
    # τ² = 5 なので −τ² は負
    assert certified_sign(embed(-(tau * tau))) == -1


def test_certified_sign_of_straddling_interval():
    with pytest.raises(PrecisionInsufficient) as excinfo:
        certified_sign(ComplexInterval.from_complex(0.0, 1e-3))
    assert excinfo.value.suggested_bits > 53


def test_hash_agrees_across_conductors():
    assert Z(6) == 1 + Z(3)
    assert hash(Z(6)) == hash(1 + Z(3))
    assert hash(Z(5).lift(10)) == hash(Z(5))
    assert hash((1 + Z(3)).lift(12)) == hash(Z(6))
    assert len({Z(5), Z(5).lift(15), Z(5, 2), Z(5, 2).lift(10)}) == 2


def test_minimal_conductor():
    reduced = (Z(4) + 1).lift(12).minimal()
    assert reduced.n == 4
    assert reduced.coeffs == (1, 1)
    assert Z(6).minimal().n == 3
    assert CyclotomicNumber.from_rational(2, 7).minimal().n == 1


def test_galois_apply_needs_matching_field():
    with pytest.raises(GroupMismatch):
        galois_apply(GaloisElement(4, 3), Z(5))
    assert galois_apply(GaloisElement(3, 2), Z(6)) == Z(6, 5)
    assert galois_apply(GaloisElement(4, 3), Z(8, 2)) == Z(4, 3)

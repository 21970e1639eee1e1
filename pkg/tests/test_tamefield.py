from fractions import Fraction

import pytest

from src.domain.classrep import restrict_symplectic, theta_rational
from src.domain.errors import (
    BadOrder,
    NotCohomologicallyTrivial,
    NotFree,
    NotSymplectic,
    NotVisiblyRational,
    TamenessViolation,
)
from src.domain.grouprings import GroupRingElement
from src.domain.tamefield import (
    BranchIntersectionData,
    IntersectionPoint,
    artin_conductor_p,
    chi_ring_of_integers,
    eps_infinity_tilde,
    exact_resolvent,
    exact_resolvent_norm,
    galois_action_check,
    gauss_magnitude_check,
    gauss_reciprocity_holds,
    intersection_representative,
    normalized_ring_class,
    pfaffian,
    resolvent_sign_check,
    ring_class_representative,
    tame_gauss_sum,
    tameness_check,
    torsion_quotient_check,
)


@pytest.fixture
def generators(q_zeta5):
    table = q_zeta5.table
    return {
        "2χ0": table.character(0) * 2,
        "2χ1": table.character(1) * 2,
        "χ2 + χ3": table.character(2) + table.character(3),
    }


def test_q_zeta5_descriptor(q_zeta5):
    assert q_zeta5.ramified_primes == (5,)
    assert q_zeta5.group.order == 4


def test_resolvents_of_q_zeta5(q_zeta5):
    assert exact_resolvent(q_zeta5, 0) == -1
    # 二次 Gauss 和 √5
    quadratic = exact_resolvent(q_zeta5, 1)
    assert quadratic * quadratic == 5


def test_resolvent_norm_of_symplectic_generator(q_zeta5, generators):
    assert exact_resolvent_norm(q_zeta5, generators["χ2 + χ3"]) == -5
    assert exact_resolvent_norm(q_zeta5, generators["2χ1"]) == 5


def test_resolvent_signs_match_eps(fields):
    for name, F in fields.items():
        for check in resolvent_sign_check(F):
            assert check.holds, (name, check.label)


def test_eps_on_q_zeta5(q_zeta5, generators):
    assert eps_infinity_tilde(q_zeta5, generators["2χ0"]) == 1
    assert eps_infinity_tilde(q_zeta5, generators["2χ1"]) == 1
    assert eps_infinity_tilde(q_zeta5, generators["χ2 + χ3"]) == -1
    assert [c.resolvent_sign for c in resolvent_sign_check(q_zeta5)] == [1, 1, -1]


def test_eps_requires_symplectic(q_zeta5):
    with pytest.raises(NotSymplectic):
        eps_infinity_tilde(q_zeta5, q_zeta5.table.character(2))


def test_pfaffian_and_conductor(q_zeta5, generators):
    assert pfaffian(q_zeta5, generators["2χ0"]) == {}
    assert pfaffian(q_zeta5, generators["χ2 + χ3"]) == {5: Fraction(-5)}
    assert artin_conductor_p(q_zeta5, generators["χ2 + χ3"], 5) == 2
    assert artin_conductor_p(q_zeta5, generators["χ2 + χ3"], 3) == 0


def test_gauss_magnitudes(fields):
    for name, F in fields.items():
        for check in gauss_magnitude_check(F):
            assert check.holds, (name, check.label)


def test_galois_action(q_zeta5):
    for i in range(len(q_zeta5.table)):
        for g in range(q_zeta5.group.order):
            ok, residual = galois_action_check(q_zeta5, i, g)
            assert ok, (i, g, residual)


def test_ring_class_representative(q_zeta5):
    rep = ring_class_representative(q_zeta5)
    assert rep.fin[5] == (1, Fraction(-1, 5), Fraction(1, 5))
    assert all(a.exact == 4 for a in rep.arch)
    assert theta_rational(rep.tilde()).values == (1, Fraction(-1, 5), Fraction(1, 5))


def test_ring_of_integers_arch_value(q_zeta5):
    restricted = restrict_symplectic(chi_ring_of_integers(q_zeta5))
    # 4·|N(b|χ2+χ3)|
    assert restricted.arch[2].value == pytest.approx(20.0, rel=1e-9)


def test_normalized_class_agrees_up_to_sign(q_zeta5):
    left = theta_rational(normalized_ring_class(q_zeta5).tilde())
    right = theta_rational(ring_class_representative(q_zeta5).tilde())
    assert left.values == (1, Fraction(1, 5), Fraction(1, 5))
    assert [abs(x) for x in left.values] == [abs(y) for y in right.values]


def test_non_integral_basis(fields):
    F = fields["s3_cubic"]
    with pytest.raises(NotFree):
        chi_ring_of_integers(F)
    with pytest.raises(NotVisiblyRational):
        normalized_ring_class(F)


def _norm_element(G):
    return GroupRingElement.from_dict(G, {g: 1 for g in range(G.order)})


@pytest.mark.parametrize(
    "make_alpha, expected",
    [
        # (1 + N)(b) = ζ5 − 1、𝔞 = (1 − ζ5)
        (lambda G: _norm_element(G) + GroupRingElement.one(G), {5: (5, 1, 1, 1)}),
        (lambda G: -(_norm_element(G) + GroupRingElement.one(G)), {5: (-5, -1, -1, -1)}),
        # 𝔞 = O_N
        (lambda G: GroupRingElement.one(G), {}),
        # 𝔞 = 5·O_N
        (lambda G: GroupRingElement.scalar(G, 5), {5: (5, 5, 5, 5)}),
    ],
)
def test_torsion_quotient(q_zeta5, make_alpha, expected):
    check = torsion_quotient_check(q_zeta5, make_alpha(q_zeta5.group), 5)
    assert check.finite_match
    assert check.left.fin == expected
    assert check.right.fin == expected
    assert check.holds


def test_torsion_quotient_needs_finite_p_quotient(q_zeta5):
    G = q_zeta5.group
    with pytest.raises(NotCohomologicallyTrivial):
        torsion_quotient_check(q_zeta5, GroupRingElement.scalar(G, 6), 5)
    with pytest.raises(NotCohomologicallyTrivial):
        torsion_quotient_check(q_zeta5, GroupRingElement.one(G) - GroupRingElement.basis(G, 1), 5)
    with pytest.raises(NotCohomologicallyTrivial):
        torsion_quotient_check(q_zeta5, GroupRingElement.scalar(G, 5), 3)


def test_intersection_representative(q_zeta5):
    point = IntersectionPoint(p=5, f=1, component_inertia=(0, 1, 2, 3), component_char={1: 1})
    rep = intersection_representative(q_zeta5.table, BranchIntersectionData((point,)))
    assert rep.fin[5] == (1, Fraction(-1, 5), Fraction(-1, 5))
    empty = intersection_representative(q_zeta5.table, BranchIntersectionData())
    assert empty.fin == {}


def test_tame_gauss_sums():
    tau = tame_gauss_sum(5, 5, 4, 1)
    assert tau.magnitude_holds()
    assert gauss_reciprocity_holds(5, 5, 4, 1)
    assert tame_gauss_sum(5, 25, 24, 7).magnitude_holds()
    assert gauss_reciprocity_holds(7, 7, 6, 3)


def test_gauss_sum_of_trivial_character():
    tau = tame_gauss_sum(5, 5, 4, 0)
    assert tau.is_trivial_character
    assert tau.value == -1


def test_gauss_sum_order_checks():
    with pytest.raises(BadOrder):
        tame_gauss_sum(5, 5, 3, 1)
    with pytest.raises(BadOrder):
        tame_gauss_sum(5, 6, 4, 1)


def test_tameness():
    tameness_check(5, 4)
    with pytest.raises(TamenessViolation):
        tameness_check(2, 2)


def test_wild_field_is_rejected(corpus, data_dir):
    with pytest.raises(TamenessViolation):
        corpus.load_field(str(data_dir / "wild_q_i.json"))

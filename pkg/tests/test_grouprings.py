from fractions import Fraction

import pytest

from src.domain.errors import GroupMismatch, Singular
from src.domain.grouprings import (
    GroupRingElement,
    bad_primes,
    gr_identity,
    gr_inverse,
    gr_matrix,
    gr_multiply,
    is_invertible_over_Q,
    is_invertible_over_Z,
    is_invertible_over_Zp,
    regular_determinant,
    rep_determinant,
)


@pytest.fixture
def c2(tables):
    return tables["c2"]


def test_multiplication_follows_group_law(tables):
    G = tables["s3"].group
    for g in range(G.order):
        for h in range(G.order):
            product = GroupRingElement.basis(G, g) * GroupRingElement.basis(G, h)
            assert product == GroupRingElement.basis(G, G.mul[g][h])


def test_norm_element_absorbs_group(c2):
    G = c2.group
    N = GroupRingElement.from_dict(G, {0: 1, 1: 1})
    assert N * GroupRingElement.basis(G, 1) == N
    assert N * N == N * 2
    assert N.augmentation() == 2


def test_bar_inverts_elements(tables):
    G = tables["c4"].group
    x = GroupRingElement.from_dict(G, {1: 2, 3: Fraction(1, 2)})
    assert x.bar() == GroupRingElement.from_dict(G, {3: 2, 1: Fraction(1, 2)})


def test_mismatched_groups(tables):
    a = GroupRingElement.one(tables["c2"].group)
    b = GroupRingElement.one(tables["c3"].group)
    with pytest.raises(GroupMismatch):
        a + b


def test_regular_determinant_is_product_of_character_values(c2):
    G = c2.group
    m = gr_matrix(G, [[{0: 2, 1: 1}]])
    # (2+1)(2−1)
    assert regular_determinant(G, m) == 3
    assert rep_determinant(m, c2.irreps[0]) == 3
    assert rep_determinant(m, c2.irreps[1]) == 1


def test_inverse(tables):
    G = tables["s3"].group
    m = gr_matrix(G, [[{0: 2, 1: 1}, 1], [0, {0: 3}]])
    inv = gr_inverse(G, m)
    assert gr_multiply(G, m, inv) == gr_identity(G, 2)


def test_singular_matrix_has_no_inverse(c2):
    G = c2.group
    m = gr_matrix(G, [[{0: 1, 1: 1}]])
    assert not is_invertible_over_Q(G, m)
    with pytest.raises(Singular):
        gr_inverse(G, m)
    with pytest.raises(Singular):
        bad_primes(G, m)


def test_local_invertibility(c2):
    G = c2.group
    m = gr_matrix(G, [[{0: 2, 1: 1}]])
    assert is_invertible_over_Zp(G, m, 2)
    assert not is_invertible_over_Zp(G, m, 3)
    assert not is_invertible_over_Z(G, m)
    assert bad_primes(G, m) == {3}

    half = gr_matrix(G, [[Fraction(1, 2)]])
    assert not is_invertible_over_Zp(G, half, 2)
    assert bad_primes(G, half) == {2}


def test_group_elements_are_integral_units(c2):
    G = c2.group
    g = gr_matrix(G, [[{1: 1}]])
    assert is_invertible_over_Z(G, g)
    assert rep_determinant(g, c2.irreps[1]) == -1

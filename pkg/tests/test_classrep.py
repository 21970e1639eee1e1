from fractions import Fraction

import pytest

from src.domain.classrep import (
    ArchValue,
    ArithClassRep,
    TorsionModulePresentation,
    class_invariants,
    degree_map_trivialG,
    delta_K,
    det_of_unit,
    from_values,
    ind_from_trivial,
    is_galois_equivariant,
    one_G_coordinate,
    pfaffian_p,
    restrict_symplectic,
    same_class,
    square_rationality,
    theta_rational,
    tilde,
    torsion_class,
    xi_S,
)
from src.domain.cycloarith import CyclotomicNumber
from src.domain.errors import NotRationalSquare, NotVisiblyRational, OddProduct, Singular
from src.domain.groupchar import VirtualCharacter, subgroup, symplectic_generators
from src.domain.grouprings import gr_identity, gr_matrix, gr_multiply

ONE = CyclotomicNumber.one()


def _q(x):
    return CyclotomicNumber.from_rational(x)


def _trivial_class(table, fin=None, arch=1):
    fin = {p: (_q(v),) for p, v in (fin or {}).items()}
    value = ArchValue.of_rational(arch) if isinstance(arch, (int, Fraction)) else ArchValue(arch, 1e-15)
    return from_values(table, fin, (value,))


def test_det_of_identity_is_one(tables):
    table = tables["s3"]
    assert det_of_unit(gr_identity(table.group, 2), table) == (1, 1, 1)


def test_det_of_group_element_on_c2(tables):
    table = tables["c2"]
    assert det_of_unit(gr_matrix(table.group, [[{1: 1}]]), table) == (1, -1)


def test_det_is_multiplicative(tables):
    table = tables["c3"]
    G = table.group
    x = gr_matrix(G, [[{0: 1, 1: 1}, {2: 1}], [0, {1: 1}]])
    y = gr_matrix(G, [[{0: 2, 2: -1}, 0], [{1: 3}, 1]])
    dx, dy, dxy = det_of_unit(x, table), det_of_unit(y, table), det_of_unit(gr_multiply(G, x, y), table)
    assert dxy == tuple(a * b for a, b in zip(dx, dy))
    assert is_galois_equivariant(dx, table)


def test_det_of_singular_matrix(tables):
    table = tables["c2"]
    with pytest.raises(Singular):
        det_of_unit(gr_matrix(table.group, [[{0: 1, 1: 1}]]), table)


def test_group_operations(tables):
    table = tables["c2"]
    a = from_values(table, {3: (_q(3), _q(Fraction(1, 3)))}, (ArchValue.of_rational(2), ArchValue(1.5, 1e-15)))
    b = from_values(table, {5: (_q(5), ONE)}, (ArchValue.one(), ArchValue.of_rational(7)))
    identity = ArithClassRep.identity(table)

    assert (a * a.inverse()).equals(identity)
    assert (identity * a).equals(a)
    assert (a * b).support == (3, 5)
    assert (a / b).fin_value(5, 0) == Fraction(1, 5)


def test_tilde(tables, trivial_table):
    table = tables["s3"]
    a = from_values(
        table,
        {2: (_q(2), _q(3), _q(5))},
        (ArchValue.of_rational(3), ArchValue.one(), ArchValue.of_rational(4)),
    )
    t = tilde(a)
    fin, arch = one_G_coordinate(t)
    assert all(v == 1 for v in fin.values())
    assert arch.exact == 1
    # χ(1) = 2 の指標では f(χ)/f(1)²
    assert t.fin_value(2, 2) == Fraction(5, 4)
    assert t.arch[2].exact == Fraction(4, 9)
    assert tilde(_trivial_class(trivial_table, {3: 3}, 5)).equals(ArithClassRep.identity(trivial_table))


def test_restrict_symplectic_on_identity(tables):
    table = tables["q8"]
    s = restrict_symplectic(ArithClassRep.identity(table))
    assert s.fin == {}
    assert all(a.exact == 1 for a in s.arch)


def test_restrict_symplectic_on_two_times_trivial(tables):
    table = tables["c4"]
    a = from_values(table, {5: (_q(5), ONE, ONE, ONE)}, (ArchValue.of_rational(2),) + (ArchValue.one(),) * 3)
    s = restrict_symplectic(a)
    assert s.fin_value(5, 0) == 25
    assert s.arch[0].exact == 4


def test_theta_rational_examples(trivial_table):
    s = restrict_symplectic(_trivial_class(trivial_table, {3: 3}))
    # 生成元 2·1 で 3² = 9
    assert theta_rational(s).values == (Fraction(9),)
    assert theta_rational(restrict_symplectic(ArithClassRep.identity(trivial_table))).values == (1,)


def test_theta_requires_visibly_rational(tables):
    table = tables["c4"]
    i = CyclotomicNumber.zeta(4)
    a = from_values(table, {5: (ONE, ONE, i, -i)}, (ArchValue.one(),) * 4)
    s = restrict_symplectic(a, [table.character(2)])
    with pytest.raises(NotVisiblyRational):
        theta_rational(s)

    inexact = from_values(table, {}, (ArchValue(1.7, 1e-12),) + (ArchValue.one(),) * 3)
    with pytest.raises(NotVisiblyRational):
        theta_rational(restrict_symplectic(inexact))


def test_torsion_class(tables, trivial_table):
    G1 = trivial_table.group
    identity = torsion_class(TorsionModulePresentation(5, gr_identity(G1, 1)), trivial_table)
    assert identity.equals(ArithClassRep.identity(trivial_table))

    nu = torsion_class(TorsionModulePresentation(7, gr_matrix(G1, [[7]])), trivial_table)
    assert nu.fin_value(7, 0) == 7
    assert degree_map_trivialG(nu).exact == 7

    c2 = tables["c2"]
    diag = torsion_class(TorsionModulePresentation(5, gr_matrix(c2.group, [[5, 0], [0, 5]])), c2)
    assert diag.fin[5] == (25, 25)
    single = torsion_class(TorsionModulePresentation(5, gr_matrix(c2.group, [[5]])), c2)
    assert single.fin[5] == (5, 5)


def test_pfaffian_p(tables):
    table = tables["c4"]
    I = subgroup(table, range(4))
    zero = VirtualCharacter.zero(len(table))
    assert pfaffian_p(5, table, I, zero) == 1
    assert pfaffian_p(5, table, I, table.character(2) + table.character(3)) == -5

    unramified = subgroup(table, [0])
    assert pfaffian_p(3, table, unramified, table.character(2) + table.character(3)) == 1


def test_delta_K():
    assert delta_K(1, 1, 5, 0).exact == 1
    assert delta_K(1, 1, 2, 2).exact == 2
    assert delta_K(1, 1, 4, 2).exact == 4
    assert delta_K(1, 1, 4, 1).exact == 2
    approx = delta_K(1, 1, 2, 1)
    assert not approx.is_exact
    assert approx.value == pytest.approx(2 ** 0.5)


def test_xi_S():
    assert xi_S([], 1, 2, 3) == 1
    assert xi_S([2, 3], 1, 2, 0) == 1
    assert xi_S([2, 3], 1, 2, 1) == Fraction(1, 6)
    with pytest.raises(OddProduct):
        xi_S([2], 1, 1, 1)


def test_degree_map_and_square_rationality(trivial_table):
    assert degree_map_trivialG(ArithClassRep.identity(trivial_table)).exact == 1
    a = from_values(trivial_table, {2: (_q(2),), 3: (_q(3),)}, (ArchValue.one(),))
    assert degree_map_trivialG(a).exact == 6
    b = _trivial_class(trivial_table, arch=2)
    assert degree_map_trivialG(b).exact == Fraction(1, 2)
    assert square_rationality(b) == Fraction(1, 4)
    with pytest.raises(NotRationalSquare):
        square_rationality(_trivial_class(trivial_table, arch=2 ** 0.5))


def test_gamma_squared_matches_theta(trivial_table):
    a = _trivial_class(trivial_table, {5: 5}, 3)
    theta = theta_rational(restrict_symplectic(a))
    assert theta.value(VirtualCharacter((2,))) == square_rationality(a)


def test_ind_from_trivial(tables, trivial_table):
    c2 = tables["c2"]
    assert ind_from_trivial(ArithClassRep.identity(trivial_table), c2).equals(ArithClassRep.identity(c2))

    a = _trivial_class(trivial_table, arch=Fraction(1, 2))
    induced = ind_from_trivial(a, c2)
    assert [v.exact for v in induced.arch] == [Fraction(1, 2), Fraction(1, 2)]

    s3 = tables["s3"]
    b = _trivial_class(trivial_table, {3: 3}, 2)
    assert tilde(ind_from_trivial(b, s3)).equals(ArithClassRep.identity(s3))


def test_class_invariants_ignore_local_units(tables):
    table = tables["c2"]
    a = from_values(table, {3: (_q(3), _q(2))}, (ArchValue.of_rational(5), ArchValue.one()))
    # 3 進単数倍
    b = from_values(table, {3: (_q(6), _q(Fraction(2, 5)))}, (ArchValue.of_rational(5), ArchValue.one()))
    assert same_class(a, b)
    assert class_invariants(a)[0].exact == Fraction(3, 5)
    c = from_values(table, {3: (_q(9), _q(2))}, (ArchValue.of_rational(5), ArchValue.one()))
    assert not same_class(a, c)


def test_global_elements_give_trivial_invariants(tables):
    table = tables["c2"]
    # 大域元 2 の対角像
    a = from_values(table, {2: (_q(2), _q(2))}, (ArchValue.of_rational(2), ArchValue.of_rational(2)))
    assert all(v.exact == 1 for v in class_invariants(a))


def test_symplectic_rep_tilde(tables):
    table = tables["c4"]
    gens = symplectic_generators(table)
    a = from_values(table, {5: (_q(5), ONE, ONE, ONE)}, (ArchValue.of_rational(2),) + (ArchValue.one(),) * 3)
    s = restrict_symplectic(a, gens).tilde()
    theta = theta_rational(s)
    # 2χ1 と χ2+χ3 は次数 2 なので f(2·1)⁻¹ 倍になる
    assert theta.values == (1, Fraction(4, 25), Fraction(4, 25))

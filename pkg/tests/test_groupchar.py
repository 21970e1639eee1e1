import pytest

from src.domain.cycloarith import CyclotomicNumber, matrix_identity
from src.domain.errors import ComputationOverflow, NotASubgroup, NotIrreducible, SuppliedTableInvalid
from src.domain.groupchar import (
    Character,
    FiniteGroup,
    VirtualCharacter,
    augmentation_character,
    character_table,
    conjugacy_classes,
    cyclic_subgroup,
    det_character,
    frobenius_schur,
    frobenius_schur_indicators,
    induce,
    inner_product,
    is_symplectic,
    restrict,
    subgroup,
    symplectic_generators,
)

C3_TABLE = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]


def _element_of_order(table, k):
    G = table.group
    return next(g for g in range(G.order) if G.element_order(g) == k)


def test_trivial_group_has_one_class(trivial_table):
    assert len(trivial_table.classes.classes) == 1
    assert trivial_table.degrees == (1,)


def test_class_sizes(tables):
    assert sorted(tables["s3"].class_sizes) == [1, 2, 3]
    assert sorted(tables["q8"].class_sizes) == [1, 1, 2, 2, 2]
    assert conjugacy_classes(tables["s3"].group).classes[0] == (tables["s3"].group.identity,)


def test_c2_characters(tables):
    table = tables["c2"]
    assert [[int(v.to_rational()) for v in chi.values] for chi in table.characters] == [[1, 1], [1, -1]]


def test_c4_values_are_fourth_roots(tables):
    allowed = [CyclotomicNumber.zeta(4, k) for k in range(4)]
    for chi in tables["c4"].characters:
        assert all(v in allowed for v in chi.values)


def test_q8_degree_two_character_at_center(tables):
    table = tables["q8"]
    center = next(c for c, size in enumerate(table.class_sizes) if size == 1 and c != 0)
    assert table.degrees == (1, 1, 1, 1, 2)
    assert table.characters[4].values[center] == -2


@pytest.mark.parametrize("gid", ["c2", "c3", "c4", "c2xc2", "s3", "d4", "q8", "c6"])
def test_row_orthogonality(tables, gid):
    table = tables[gid]
    for a, chi in enumerate(table.characters):
        for b, phi in enumerate(table.characters):
            expected = 1 if a == b else 0
            assert table.class_function_product(chi.values, phi.values) == expected
    assert sum(d * d for d in table.degrees) == table.group.order


def test_frobenius_schur_examples(tables):
    assert frobenius_schur(tables["c2"].characters[0], tables["c2"]) == 1
    assert frobenius_schur_indicators(tables["q8"]) == (1, 1, 1, 1, -1)
    assert frobenius_schur_indicators(tables["c4"]) == (1, 1, 0, 0)
    assert frobenius_schur_indicators(tables["d4"]) == (1, 1, 1, 1, 1)


def test_frobenius_schur_rejects_non_irreducible(tables):
    table = tables["c2"]
    doubled = Character(tuple(v * 2 for v in table.characters[0].values))
    with pytest.raises(NotIrreducible):
        frobenius_schur(doubled, table)


def test_symplectic_generators(trivial_table, tables):
    assert symplectic_generators(trivial_table) == [VirtualCharacter((2,))]
    q8 = symplectic_generators(tables["q8"])
    assert [psi.coeffs for psi in q8] == [
        (2, 0, 0, 0, 0), (0, 2, 0, 0, 0), (0, 0, 2, 0, 0), (0, 0, 0, 2, 0), (0, 0, 0, 0, 1),
    ]
    assert [psi.label() for psi in symplectic_generators(tables["c4"])] == ["2χ0", "2χ1", "χ2 + χ3"]


def test_is_symplectic(tables):
    table = tables["c4"]
    assert is_symplectic(VirtualCharacter((2, -4, 1, 1)), table)
    assert not is_symplectic(VirtualCharacter((1, 0, 0, 0)), table)
    assert not is_symplectic(VirtualCharacter((0, 0, 1, 0)), table)


def test_inner_products(tables):
    table = tables["s3"]
    chi = table.character(2)
    assert inner_product(chi, chi, table) == 1
    assert inner_product(table.regular_character(), table.trivial_character(), table) == 1


def test_pairing_with_augmentation_over_whole_inertia(tables):
    table = tables["c4"]
    I = subgroup(table, range(4))
    psi = table.character(2) + table.character(3)
    assert inner_product(restrict(psi, I), augmentation_character(I), I.table) == 2


def test_induce_from_trivial_subgroup_is_regular(tables):
    table = tables["s3"]
    E = subgroup(table, [table.group.identity])
    assert induce(E, E.table.trivial_character()) == table.regular_character()


def test_restrict_regular_s3_to_c3(tables):
    table = tables["s3"]
    C3 = cyclic_subgroup(table, _element_of_order(table, 3))
    assert restrict(table.regular_character(), C3) == C3.table.regular_character() * 2


def test_induce_from_whole_group_is_identity(tables):
    table = tables["c4"]
    I = subgroup(table, range(4))
    u = augmentation_character(I)
    assert induce(I, u) == u


def test_frobenius_reciprocity(tables):
    table = tables["d4"]
    H = cyclic_subgroup(table, _element_of_order(table, 4))
    for i in range(len(table)):
        for j in range(len(H.table)):
            psi, theta = table.character(i), H.table.character(j)
            assert inner_product(induce(H, theta), psi, table) == inner_product(theta, restrict(psi, H), H.table)


def test_augmentation_characters(trivial_table, tables):
    E = subgroup(trivial_table, [0])
    assert augmentation_character(E).is_zero

    c2 = tables["c2"]
    u = augmentation_character(subgroup(c2, [0, 1]))
    assert c2.evaluate(u) == (1, -1)

    c4 = tables["c4"]
    u = augmentation_character(subgroup(c4, range(4)))
    assert u.degree(c4) == 3
    assert all(v == -1 for v in c4.evaluate(u)[1:])


def test_det_character(tables):
    q8 = tables["q8"]
    rep = q8.irreps[4]
    assert det_character(rep, q8.group.identity) == 1
    assert all(det_character(rep, g) == 1 for g in range(q8.group.order))

    c4 = tables["c4"]
    assert det_character(c4.irreps[3], 1) == CyclotomicNumber.zeta(4)


def test_supplied_irreps_match_characters(tables):
    for gid in ("s3", "d4", "q8"):
        table = tables[gid]
        assert sorted(table.irreps) == list(range(len(table)))
        rep = table.irreps[len(table) - 1]
        assert rep.matrices[table.group.identity] == matrix_identity(rep.dim)


def test_order_bound():
    G = FiniteGroup.from_table(C3_TABLE, name="C3")
    with pytest.raises(ComputationOverflow):
        character_table(G, max_order=2)


def test_supplied_table_is_validated():
    G = FiniteGroup.from_table(C3_TABLE, name="C3")
    one = CyclotomicNumber.one()
    bad = [Character((one, one, one)), Character((one, one, one)), Character((one, one, one))]
    with pytest.raises(SuppliedTableInvalid):
        character_table(G, bad)


def test_subgroup_requires_closure(tables):
    with pytest.raises(NotASubgroup):
        subgroup(tables["c4"], [1])
    with pytest.raises(NotASubgroup):
        subgroup(tables["c4"], [0, 1])

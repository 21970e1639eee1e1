from fractions import Fraction

import pytest

from src.domain.classrep import ArchValue, from_values
from src.domain.cycloarith import CyclotomicNumber
from src.domain.grouprings import GroupRingElement
from src.infrastructure.codecs import (
    FieldError,
    decode_class_rep,
    encode_arch,
    encode_class_rep,
    encode_cyclotomic,
    encode_float,
    encode_rational,
    parse_cyclotomic,
    parse_group_ring_element,
    parse_group_ring_matrix,
    parse_interval,
    parse_rational,
    parse_virtual_character,
)


def test_rational_literals():
    assert parse_rational(3, "x") == 3
    assert parse_rational([2, 6], "x") == Fraction(1, 3)
    assert parse_rational("-5/7", "x") == Fraction(-5, 7)


@pytest.mark.parametrize("value", [True, [1, 0], [1, 2, 3], 0.5, "abc", None])
def test_bad_rational_literals(value):
    with pytest.raises(FieldError):
        parse_rational(value, "x")


def test_field_error_keeps_path():
    with pytest.raises(FieldError) as excinfo:
        parse_rational([1, 0], "ram[0].p")
    assert excinfo.value.path == "ram[0].p"
    assert str(excinfo.value).startswith("ram[0].p: ")


def test_cyclotomic_literals():
    assert parse_cyclotomic({"n": 5, "terms": {"1": 1}}, "b") == CyclotomicNumber.zeta(5)
    assert parse_cyclotomic({"n": 4, "coeffs": [0, [1, 2]]}, "b") == CyclotomicNumber.zeta(4) / 2
    assert parse_cyclotomic(7, "b") == 7
    with pytest.raises(FieldError):
        parse_cyclotomic({"n": 0, "terms": {}}, "b")
    with pytest.raises(FieldError):
        parse_cyclotomic({"n": 5}, "b")
    with pytest.raises(FieldError):
        parse_cyclotomic({"n": 5, "terms": {"x": 1}}, "b")


def test_group_ring_literals(tables):
    G = tables["c3"].group
    assert parse_group_ring_element(G, {"0": 1, "2": [1, 2]}, "e") == GroupRingElement.from_dict(G, {0: 1, 2: Fraction(1, 2)})
    assert parse_group_ring_element(G, 4, "e") == GroupRingElement.scalar(G, 4)
    with pytest.raises(FieldError):
        parse_group_ring_element(G, {"3": 1}, "e")
    with pytest.raises(FieldError):
        parse_group_ring_matrix(G, [[1, 0]], "B", shape=(2, 2))


def test_interval_literal():
    x = parse_interval([1.0, -2.0, 1e-6], "embeddings[0]")
    assert x.contains(complex(1.0, -2.0))
    with pytest.raises(FieldError):
        parse_interval([1.0, 2.0, -1.0], "embeddings[0]")
    with pytest.raises(FieldError):
        parse_interval([1.0, 2.0], "embeddings[0]")


def test_virtual_character_literal(tables):
    table = tables["c4"]
    psi = parse_virtual_character(table, {"2": 1, "3": 1}, "psi")
    assert psi == table.character(2) + table.character(3)
    with pytest.raises(FieldError):
        parse_virtual_character(table, {"4": 1}, "psi")


def test_encodings_are_canonical():
    assert encode_rational(Fraction(4, 2)) == 2
    assert encode_rational(Fraction(-1, 5)) == [-1, 5]
    assert encode_cyclotomic(CyclotomicNumber.from_rational(Fraction(1, 3), 7)) == [1, 3]
    assert encode_float(0.1 + 0.2) == 0.3
    assert encode_arch(ArchValue.of_rational(Fraction(1, 5))) == [0.2, 0.0, [1, 5]]


def test_class_rep_survives_encoding(tables):
    table = tables["c4"]
    i = CyclotomicNumber.zeta(4)
    a = from_values(
        table,
        {5: (CyclotomicNumber.from_rational(5), CyclotomicNumber.one(), i, -i)},
        (ArchValue.of_rational(2), ArchValue.one(), ArchValue(1.25, 1e-12), ArchValue(1.25, 1e-12)),
    )
    data = encode_class_rep(a)
    assert data["fin"]["5"] == {"0": 5, "2": {"n": 4, "coeffs": [0, 1]}, "3": {"n": 4, "coeffs": [0, -1]}}
    assert decode_class_rep(table, data).equals(a)

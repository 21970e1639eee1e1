"""記述子とレポートの JSON 符号化

有理数は整数か [分子, 分母]、円分数は {"n", "coeffs"} か {"n", "terms"}、
群環の元は {要素番号: 係数} で表す。
"""
import math
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Sequence

from ..domain.classrep import ArchValue, ArithClassRep, RationalSymplecticClass, SymplecticClassRep
from ..domain.cycloarith import ComplexInterval, CyclotomicNumber
from ..domain.groupchar import CharacterTable, FiniteGroup, VirtualCharacter
from ..domain.grouprings import GroupRingElement, GroupRingMatrix, gr_matrix


class FieldError(ValueError):
    """記述子の項目の誤り（項目の位置を保持）"""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


# 読み込み


def parse_rational(value: Any, path: str) -> Fraction:
    if isinstance(value, bool):
        raise FieldError(path, f"有理数ではありません: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as e:
            raise FieldError(path, f"有理数として読めません: {value!r}") from e
    if isinstance(value, (list, tuple)) and len(value) == 2 and all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        if value[1] == 0:
            raise FieldError(path, "分母が 0 です")
        return Fraction(value[0], value[1])
    raise FieldError(path, f"有理数は整数か [分子, 分母] で与えてください: {value!r}")


def parse_cyclotomic(value: Any, path: str) -> CyclotomicNumber:
    """円分数のリテラル"""
    if not isinstance(value, dict):
        return CyclotomicNumber.from_rational(parse_rational(value, path))
    n = value.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise FieldError(f"{path}.n", f"導手は正の整数である必要があります: {n!r}")
    if "coeffs" in value:
        coeffs = value["coeffs"]
        if not isinstance(coeffs, list):
            raise FieldError(f"{path}.coeffs", "係数はリストで与えてください")
        return CyclotomicNumber.from_coefficients(
            n, [parse_rational(c, f"{path}.coeffs[{i}]") for i, c in enumerate(coeffs)]
        )
    if "terms" in value:
        terms = value["terms"]
        if not isinstance(terms, dict):
            raise FieldError(f"{path}.terms", "terms は {指数: 係数} で与えてください")
        parsed = {}
        for key, c in terms.items():
            try:
                exponent = int(key)
            except ValueError as e:
                raise FieldError(f"{path}.terms", f"指数が整数ではありません: {key!r}") from e
            parsed[exponent] = parse_rational(c, f"{path}.terms[{key}]")
        return CyclotomicNumber.from_exponents(n, parsed)
    raise FieldError(path, "coeffs か terms のどちらかが必要です")


def parse_cyclo_matrix(rows: Any, path: str):
    if not isinstance(rows, list) or not rows or any(not isinstance(r, list) for r in rows):
        raise FieldError(path, "行列は行のリストで与えてください")
    size = len(rows)
    if any(len(r) != size for r in rows):
        raise FieldError(path, "正方行列ではありません")
    return tuple(
        tuple(parse_cyclotomic(v, f"{path}[{a}][{b}]") for b, v in enumerate(row))
        for a, row in enumerate(rows)
    )


def parse_group_ring_element(group: FiniteGroup, value: Any, path: str) -> GroupRingElement:
    if not isinstance(value, dict):
        return GroupRingElement.scalar(group, parse_rational(value, path))
    terms = {}
    for key, c in value.items():
        try:
            g = int(key)
        except ValueError as e:
            raise FieldError(path, f"要素番号が整数ではありません: {key!r}") from e
        if not 0 <= g < group.order:
            raise FieldError(path, f"要素番号 {g} が範囲外です（位数 {group.order}）")
        terms[g] = parse_rational(c, f"{path}[{key}]")
    return GroupRingElement.from_dict(group, terms)


def parse_group_ring_matrix(group: FiniteGroup, rows: Any, path: str, shape=None) -> GroupRingMatrix:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise FieldError(path, "群環行列は行のリストで与えてください")
    if shape is not None:
        n_rows, n_cols = shape
        if len(rows) != n_rows or any(len(r) != n_cols for r in rows):
            raise FieldError(path, f"サイズが {n_rows}×{n_cols} ではありません")
    entries = [
        [parse_group_ring_element(group, v, f"{path}[{a}][{b}]") for b, v in enumerate(row)]
        for a, row in enumerate(rows)
    ]
    return gr_matrix(group, entries)


def parse_interval(value: Any, path: str) -> ComplexInterval:
    """[実部, 虚部, 半径]"""
    if not isinstance(value, list) or len(value) != 3:
        raise FieldError(path, f"埋め込みは [re, im, radius] で与えてください: {value!r}")
    try:
        re, im, radius = (float(v) for v in value)
    except (TypeError, ValueError) as e:
        raise FieldError(path, f"数値ではありません: {value!r}") from e
    if radius < 0 or not all(map(math.isfinite, (re, im, radius))):
        raise FieldError(path, f"半径が負か値が有限ではありません: {value!r}")
    return ComplexInterval.from_complex(complex(re, im), radius)


def parse_virtual_character(table: CharacterTable, value: Any, path: str) -> VirtualCharacter:
    """{指標番号: 係数}"""
    if not isinstance(value, dict):
        raise FieldError(path, "仮想指標は {指標番号: 係数} で与えてください")
    coeffs = [0] * len(table)
    for key, c in value.items():
        i = int(key)
        if not 0 <= i < len(table) or not isinstance(c, int):
            raise FieldError(path, f"不正な項です: {key}: {c!r}")
        coeffs[i] += c
    return VirtualCharacter(tuple(coeffs))


# 書き出し


def encode_rational(q: Fraction) -> Any:
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else [q.numerator, q.denominator]


def encode_cyclotomic(a: CyclotomicNumber) -> Any:
    if a.is_rational:
        return encode_rational(a.to_rational())
    return {"n": a.n, "coeffs": [encode_rational(c) for c in a.coeffs]}


def encode_float(x: float, digits: int = 12) -> float:
    """有効数字を揃えてバイト単位で安定させる"""
    return float(f"{x:.{digits}g}")


def encode_arch(a: ArchValue) -> List[Any]:
    data = [encode_float(a.value), encode_float(a.tol)]
    if a.is_exact:
        data.append(encode_rational(a.exact))
    return data


def encode_interval(x: ComplexInterval) -> List[float]:
    z = x.midpoint
    return [encode_float(z.real), encode_float(z.imag), encode_float(x.radius, 3)]


def encode_character(psi: VirtualCharacter) -> Dict[str, int]:
    return {str(i): c for i, c in psi.support().items()}


def encode_class_rep(a: ArithClassRep) -> Dict[str, Any]:
    return {
        "fin": {
            str(p): {str(i): encode_cyclotomic(v) for i, v in enumerate(values) if v != 1}
            for p, values in a.fin.items()
        },
        "arch": {str(i): encode_arch(v) for i, v in enumerate(a.arch)},
    }


def decode_class_rep(table: CharacterTable, data: Mapping[str, Any], path: str = "class") -> ArithClassRep:
    size = len(table)
    fin = {}
    for p, values in data.get("fin", {}).items():
        row = [CyclotomicNumber.one() for _ in range(size)]
        for i, v in values.items():
            row[int(i)] = parse_cyclotomic(v, f"{path}.fin[{p}][{i}]")
        fin[int(p)] = tuple(row)
    arch = [ArchValue.one() for _ in range(size)]
    for i, v in data.get("arch", {}).items():
        value, tol = float(v[0]), float(v[1])
        exact = parse_rational(v[2], f"{path}.arch[{i}]") if len(v) > 2 else None
        arch[int(i)] = ArchValue(value, tol, exact)
    return ArithClassRep(table, fin, tuple(arch))


def encode_symplectic(s: SymplecticClassRep) -> List[Dict[str, Any]]:
    rows = []
    for i, psi in enumerate(s.generators):
        rows.append({
            "generator": encode_character(psi),
            "label": psi.label(),
            "fin": {str(p): encode_cyclotomic(values[i]) for p, values in s.fin.items() if values[i] != 1},
            "arch": encode_arch(s.arch[i]),
        })
    return rows


def encode_theta(theta: RationalSymplecticClass) -> List[Dict[str, Any]]:
    return [
        {"generator": encode_character(psi), "label": psi.label(), "theta": encode_rational(v)}
        for psi, v in zip(theta.generators, theta.values)
    ]


def encode_values(values: Sequence[CyclotomicNumber]) -> List[Any]:
    return [encode_cyclotomic(v) for v in values]

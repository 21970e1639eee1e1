"""有限群と指標論の基盤

共役類、既約指標（円分数値）、Frobenius–Schur 指標、シンプレクティック指標群、
誘導と制限、内積を扱う。全ての値は構築後に不変。
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .cycloarith import (
    CycloMatrix,
    CyclotomicNumber,
    GaloisElement,
    conjugate,
    galois_apply,
    matrix_determinant,
    matrix_identity,
    matrix_multiply,
    matrix_trace,
)
from .dixon import dixon_character_values
from .errors import (
    ComputationOverflow,
    DescriptorError,
    GroupMismatch,
    NotASubgroup,
    NotIrreducible,
    SuppliedTableInvalid,
)

logger = logging.getLogger(__name__)

DEFAULT_MAX_ORDER = 64


def _lcm(values: Iterable[int]) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), values, 1)


# 群


def permutation_elements(generators: Sequence[Sequence[int]], name: str = "") -> List[Tuple[int, ...]]:
    """置換の生成元から幅優先探索で得られる元の列（単位元が先頭）

    y = x∘s の順に閉じるので、同じ生成元からは常に同じ番号付けになる。
    """
    if not generators:
        raise DescriptorError(name or "group", ["生成元がありません"])
    degree = len(generators[0])
    perms = []
    for i, gen in enumerate(generators):
        gen = tuple(int(x) for x in gen)
        if len(gen) != degree or sorted(gen) != list(range(degree)):
            raise DescriptorError(name or "group", [f"generators[{i}] が {degree} 点上の置換ではありません"])
        perms.append(gen)

    identity = tuple(range(degree))
    elements = [identity]
    index = {identity: 0}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for s in perms:
            y = tuple(x[s[k]] for k in range(degree))
            if y not in index:
                index[y] = len(elements)
                elements.append(y)
                queue.append(y)
                if len(elements) > 10 * DEFAULT_MAX_ORDER * DEFAULT_MAX_ORDER:
                    raise ComputationOverflow(f"{name}: 生成される群が大きすぎます")
    return elements


@dataclass(frozen=True)
class FiniteGroup:
    """乗積表で与えられる有限群

    Attributes:
        order: 位数
        mul: mul[g][h] = gh の要素番号
        identity: 単位元の番号
        inv: 逆元表
        exponent: 要素の位数の最小公倍数
        generators: 生成系（既約表現の生成元行列の展開に使う）
    """
    order: int
    mul: Tuple[Tuple[int, ...], ...]
    identity: int
    inv: Tuple[int, ...]
    exponent: int
    generators: Tuple[int, ...] = ()
    name: str = ""

    @classmethod
    def from_table(cls, mul: Sequence[Sequence[int]], name: str = "", generators: Sequence[int] = ()) -> "FiniteGroup":
        """乗積表から群を構築し、群の公理を全て検証する"""
        problems = []
        order = len(mul)
        if order == 0:
            raise DescriptorError(name or "group", ["乗積表が空です"])
        table = tuple(tuple(int(x) for x in row) for row in mul)
        for i, row in enumerate(table):
            if len(row) != order:
                problems.append(f"mul_table[{i}] の長さが {order} ではありません")
            elif sorted(row) != list(range(order)):
                problems.append(f"mul_table[{i}] が置換になっていません")
        if problems:
            raise DescriptorError(name or "group", problems)

        identity = next((e for e in range(order) if table[e] == tuple(range(order))), None)
        if identity is None or any(table[g][identity] != g for g in range(order)):
            raise DescriptorError(name or "group", ["単位元が存在しません"])

        inv = []
        for g in range(order):
            candidates = [h for h in range(order) if table[g][h] == identity]
            if len(candidates) != 1 or table[candidates[0]][g] != identity:
                raise DescriptorError(name or "group", [f"要素 {g} の逆元が一意に定まりません"])
            inv.append(candidates[0])

        for a in range(order):
            row_a = table[a]
            for b in range(order):
                ab = row_a[b]
                row_b = table[b]
                for c in range(order):
                    if table[ab][c] != row_a[row_b[c]]:
                        raise DescriptorError(name or "group", [f"結合法則が ({a}, {b}, {c}) で成り立ちません"])

        orders = [_element_order(table, identity, g) for g in range(order)]
        exponent = _lcm(orders)
        gens = tuple(int(g) for g in generators) or _greedy_generators(table, identity)
        for g in gens:
            if not 0 <= g < order:
                raise DescriptorError(name or "group", [f"生成元 {g} が範囲外です"])
        return cls(order, table, identity, tuple(inv), exponent, gens, name)

    @classmethod
    def from_permutations(cls, generators: Sequence[Sequence[int]], name: str = "") -> "FiniteGroup":
        """置換の生成元から幅優先探索で群を閉じる（単位元が 0 番）

        合成は (gh)(k) = g(h(k))。
        """
        elements = permutation_elements(generators, name)
        degree = len(elements[0])
        index = {p: i for i, p in enumerate(elements)}
        perms = [tuple(int(x) for x in gen) for gen in generators]
        mul = [[index[tuple(g[h[k]] for k in range(degree))] for h in elements] for g in elements]
        gen_indices = tuple(dict.fromkeys(index[s] for s in perms))
        logger.debug(f"置換群 {name} を閉じました: 位数 {len(elements)}")
        return cls.from_table(mul, name=name, generators=gen_indices)

    def power(self, g: int, k: int) -> int:
        k %= self.exponent
        result = self.identity
        base = g
        while k:
            if k & 1:
                result = self.mul[result][base]
            base = self.mul[base][base]
            k >>= 1
        return result

    def element_order(self, g: int) -> int:
        return _element_order(self.mul, self.identity, g)

    def conjugate_by(self, x: int, g: int) -> int:
        """x g x⁻¹"""
        return self.mul[self.mul[x][g]][self.inv[x]]

    @property
    def is_abelian(self) -> bool:
        return all(self.mul[a][b] == self.mul[b][a] for a in range(self.order) for b in range(a))

    def bfs_words(self, generators: Optional[Sequence[int]] = None) -> List[Tuple[int, int]]:
        """単位元からの幅優先探索の木。(親, 生成元) を y = 親·生成元 の順に返す"""
        gens = list(self.generators if generators is None else generators)
        seen = {self.identity}
        order = []
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for s in gens:
                y = self.mul[x][s]
                if y not in seen:
                    seen.add(y)
                    order.append((x, s))
                    queue.append(y)
        if len(seen) != self.order:
            raise DescriptorError(self.name or "group", ["生成元が群全体を生成しません"])
        return order


def _element_order(mul, identity: int, g: int) -> int:
    k, x = 1, g
    while x != identity:
        x = mul[x][g]
        k += 1
    return k


def _greedy_generators(mul, identity: int) -> Tuple[int, ...]:
    order = len(mul)
    span = {identity}
    gens = []
    for g in range(order):
        if g in span:
            continue
        gens.append(g)
        span = _closure(mul, span | {g})
        if len(span) == order:
            break
    return tuple(gens)


def _closure(mul, elements) -> set:
    span = set(elements)
    frontier = list(span)
    while frontier:
        new = []
        for a in frontier:
            for b in list(span):
                for c in (mul[a][b], mul[b][a]):
                    if c not in span:
                        span.add(c)
                        new.append(c)
        frontier = new
    return span


# 共役類


@dataclass(frozen=True)
class ConjClassData:
    classes: Tuple[Tuple[int, ...], ...]
    class_of: Tuple[int, ...]
    representatives: Tuple[int, ...]

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(c) for c in self.classes)


def conjugacy_classes(G: FiniteGroup) -> ConjClassData:
    """共役類（単位元の類が先頭、以降は最小要素番号順、代表元は最小要素）"""
    assigned = [-1] * G.order
    found = []
    for g in [G.identity] + [x for x in range(G.order) if x != G.identity]:
        if assigned[g] >= 0:
            continue
        cls = tuple(sorted({G.conjugate_by(x, g) for x in range(G.order)}))
        for member in cls:
            assigned[member] = len(found)
        found.append(cls)

    head, rest = found[0], sorted(found[1:], key=lambda c: c[0])
    classes = (head,) + tuple(rest)
    class_of = [0] * G.order
    for k, cls in enumerate(classes):
        for member in cls:
            class_of[member] = k
    return ConjClassData(classes, tuple(class_of), tuple(c[0] for c in classes))


def power_map(G: FiniteGroup, classes: ConjClassData, k: int) -> Tuple[int, ...]:
    """類 c ↦ g_c^k の属する類"""
    return tuple(classes.class_of[G.power(rep, k)] for rep in classes.representatives)


# 指標


@dataclass(frozen=True)
class Character:
    """類ごとの値（Q(ζ_exponent) の円分数）"""
    values: Tuple[CyclotomicNumber, ...]

    @property
    def degree(self) -> CyclotomicNumber:
        return self.values[0]

    def __getitem__(self, class_index: int) -> CyclotomicNumber:
        return self.values[class_index]


@dataclass(frozen=True)
class VirtualCharacter:
    """既約指標の整数係数結合（指標表の順序で密に保持）"""
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @classmethod
    def zero(cls, size: int) -> "VirtualCharacter":
        return cls((0,) * size)

    @classmethod
    def basis(cls, size: int, index: int, coeff: int = 1) -> "VirtualCharacter":
        coeffs = [0] * size
        coeffs[index] = coeff
        return cls(tuple(coeffs))

    def _check(self, other: "VirtualCharacter") -> None:
        if len(self.coeffs) != len(other.coeffs):
            raise GroupMismatch("異なる群の仮想指標です")

    def __add__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        self._check(other)
        return VirtualCharacter(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        self._check(other)
        return VirtualCharacter(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "VirtualCharacter":
        return VirtualCharacter(tuple(-a for a in self.coeffs))

    def __mul__(self, k: int) -> "VirtualCharacter":
        if not isinstance(k, int):
            return NotImplemented
        return VirtualCharacter(tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def support(self) -> Dict[int, int]:
        return {i: c for i, c in enumerate(self.coeffs) if c}

    def degree(self, table: "CharacterTable") -> int:
        return sum(c * table.degrees[i] for i, c in enumerate(self.coeffs))

    def values(self, table: "CharacterTable") -> Tuple[CyclotomicNumber, ...]:
        return table.evaluate(self)

    def label(self) -> str:
        terms = []
        for i, c in self.support().items():
            prefix = "" if c == 1 else ("-" if c == -1 else f"{c}")
            terms.append(f"{prefix}χ{i}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


@dataclass(frozen=True)
class IrreducibleRep:
    """要素ごとの表現行列"""
    matrices: Tuple[CycloMatrix, ...]
    dim: int
    character_index: Optional[int] = None

    def __getitem__(self, g: int) -> CycloMatrix:
        return self.matrices[g]


def extend_generator_matrices(G: FiniteGroup, generator_matrices: Mapping[int, CycloMatrix]) -> Tuple[CycloMatrix, ...]:
    """生成元の行列を幅優先の語に沿って T(xs) = T(x)T(s) で全要素へ拡張する"""
    gens = list(generator_matrices)
    if not gens:
        raise DescriptorError(G.name or "group", ["generator_matrices が空です"])
    dim = len(next(iter(generator_matrices.values())))
    matrices: Dict[int, CycloMatrix] = {G.identity: matrix_identity(dim)}
    for parent, s in G.bfs_words(gens):
        matrices[G.mul[parent][s]] = matrix_multiply(matrices[parent], generator_matrices[s])
    return tuple(matrices[g] for g in range(G.order))


def det_character(T: IrreducibleRep, g: int) -> CyclotomicNumber:
    """det T(g)"""
    return matrix_determinant(T.matrices[g])


# 指標表


@dataclass(frozen=True)
class CharacterTable:
    group: FiniteGroup
    classes: ConjClassData
    characters: Tuple[Character, ...]
    irreps: Dict[int, IrreducibleRep] = field(default_factory=dict, compare=False, hash=False)

    def __len__(self) -> int:
        return len(self.characters)

    @property
    def conductor(self) -> int:
        return self.group.exponent

    @property
    def class_sizes(self) -> Tuple[int, ...]:
        return self.classes.sizes

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(int(chi.degree.to_rational()) for chi in self.characters)

    @property
    def inverse_class(self) -> Tuple[int, ...]:
        G = self.group
        return tuple(self.classes.class_of[G.inv[rep]] for rep in self.classes.representatives)

    def value_at(self, index: int, element: int) -> CyclotomicNumber:
        return self.characters[index].values[self.classes.class_of[element]]

    def index_of(self, values: Sequence[CyclotomicNumber]) -> int:
        for i, chi in enumerate(self.characters):
            if tuple(chi.values) == tuple(values):
                return i
        raise NotIrreducible("既約指標ではありません")

    def conjugate_index(self, index: int) -> int:
        """複素共役指標の番号"""
        return self.index_of(tuple(conjugate(v) for v in self.characters[index].values))

    def galois_conjugate_index(self, index: int, k: int) -> int:
        """χ^ω（ω: ζ ↦ ζ^k）の番号。冪写像 χ(g^k) で求める"""
        pm = power_map(self.group, self.classes, k)
        return self.index_of(tuple(self.characters[index].values[pm[c]] for c in range(len(pm))))

    def galois_action(self, index: int, omega: GaloisElement) -> int:
        return self.index_of(tuple(galois_apply(omega, v) for v in self.characters[index].values))

    def evaluate(self, psi: VirtualCharacter) -> Tuple[CyclotomicNumber, ...]:
        """仮想指標の類ごとの値"""
        if len(psi.coeffs) != len(self.characters):
            raise GroupMismatch("仮想指標の長さが指標表と一致しません")
        zero = CyclotomicNumber.zero(self.conductor)
        values = []
        for c in range(len(self.classes.classes)):
            total = zero
            for i, coeff in psi.support().items():
                total = total + self.characters[i].values[c] * coeff
            values.append(total)
        return tuple(values)

    def class_function_product(self, left: Sequence[CyclotomicNumber], right: Sequence[CyclotomicNumber]) -> Fraction:
        """(1/|G|)·Σ_g a(g)·b(g⁻¹)"""
        inverse = self.inverse_class
        total = CyclotomicNumber.zero(self.conductor)
        for c, size in enumerate(self.class_sizes):
            total = total + left[c] * right[inverse[c]] * size
        total = total / self.group.order
        if not total.is_rational:
            raise GroupMismatch(f"内積が有理数になりません: {total}")
        return total.to_rational()

    def decompose(self, values: Sequence[CyclotomicNumber]) -> VirtualCharacter:
        """類関数を既約指標の整数結合として表す"""
        coeffs = []
        for chi in self.characters:
            c = self.class_function_product(values, chi.values)
            if c.denominator != 1:
                raise GroupMismatch(f"係数 {c} が整数ではありません")
            coeffs.append(int(c))
        return VirtualCharacter(tuple(coeffs))

    def character(self, index: int) -> VirtualCharacter:
        return VirtualCharacter.basis(len(self.characters), index)

    def trivial_character(self) -> VirtualCharacter:
        return self.character(0)

    def regular_character(self) -> VirtualCharacter:
        return VirtualCharacter(self.degrees)

    def conjugate_character(self, psi: VirtualCharacter) -> VirtualCharacter:
        coeffs = [0] * len(self.characters)
        for i, c in psi.support().items():
            coeffs[self.conjugate_index(i)] += c
        return VirtualCharacter(tuple(coeffs))


def _canonical_key(chi: Character) -> tuple:
    is_trivial = all(v == 1 for v in chi.values)
    return (
        0 if is_trivial else 1,
        chi.degree.to_rational(),
        tuple(v.coeffs for v in chi.values),
    )


def _check_orthogonality(G: FiniteGroup, classes: ConjClassData, characters: Sequence[Character]) -> List[str]:
    problems = []
    n_classes = len(classes.classes)
    if len(characters) != n_classes:
        problems.append(f"指標の数 {len(characters)} が類の数 {n_classes} と一致しません")
        return problems
    sizes = classes.sizes
    for a, chi in enumerate(characters):
        if len(chi.values) != n_classes:
            problems.append(f"指標 {a} の値の数が類の数と一致しません")
            return problems
    for a, chi_a in enumerate(characters):
        for b in range(a, len(characters)):
            chi_b = characters[b]
            total = sum(
                (chi_a.values[c] * conjugate(chi_b.values[c]) * sizes[c] for c in range(n_classes)),
                CyclotomicNumber.zero(),
            )
            expected = G.order if a == b else 0
            if total != expected:
                problems.append(f"行の直交関係が指標 ({a}, {b}) で成り立ちません")
    if not problems:
        degree_sq = sum(chi.degree.to_rational() ** 2 for chi in characters)
        if degree_sq != G.order:
            problems.append(f"Σχ(1)² = {degree_sq} が位数 {G.order} と一致しません")
    return problems


def _auto_abelian_irreps(G: FiniteGroup, classes: ConjClassData, characters: Sequence[Character]) -> Dict[int, IrreducibleRep]:
    return {
        i: IrreducibleRep(
            tuple(((chi.values[classes.class_of[g]],),) for g in range(G.order)),
            1,
            i,
        )
        for i, chi in enumerate(characters)
    }


def validate_irrep(G: FiniteGroup, matrices: Sequence[CycloMatrix]) -> List[str]:
    """T(e) = 1 と生成元に対する乗法性 T(x)T(s) = T(xs) を検証する"""
    problems = []
    if len(matrices) != G.order:
        return [f"行列の数 {len(matrices)} が位数 {G.order} と一致しません"]
    dim = len(matrices[G.identity])
    if matrices[G.identity] != matrix_identity(dim):
        problems.append("単位元の像が単位行列ではありません")
    for x in range(G.order):
        for s in G.generators:
            if matrix_multiply(matrices[x], matrices[s]) != matrices[G.mul[x][s]]:
                problems.append(f"乗法性が T({x})T({s}) で成り立ちません")
                return problems
    return problems


def _match_irreps(
    G: FiniteGroup,
    classes: ConjClassData,
    characters: Sequence[Character],
    supplied: Sequence[IrreducibleRep],
) -> Dict[int, IrreducibleRep]:
    matched: Dict[int, IrreducibleRep] = {}
    source = G.name or "group"
    for n, rep in enumerate(supplied):
        problems = validate_irrep(G, rep.matrices)
        if problems:
            raise DescriptorError(f"{source}.irreps[{n}]", problems)
        traces = []
        for rep_element in classes.representatives:
            traces.append(matrix_trace(rep.matrices[rep_element]))
        index = next((i for i, chi in enumerate(characters) if tuple(chi.values) == tuple(traces)), None)
        if index is None:
            raise DescriptorError(f"{source}.irreps[{n}]", ["トレースが既約指標と一致しません"])
        if rep.character_index is not None and rep.character_index != index:
            raise DescriptorError(
                f"{source}.irreps[{n}]",
                [f"character_index {rep.character_index} がトレースから決まる {index} と一致しません"],
            )
        matched[index] = IrreducibleRep(rep.matrices, rep.dim, index)
    return matched


def character_table(
    G: FiniteGroup,
    supplied: Optional[Sequence[Character]] = None,
    irreps: Sequence[IrreducibleRep] = (),
    max_order: int = DEFAULT_MAX_ORDER,
) -> CharacterTable:
    """指標表を求める（供給された表は直交関係で検証、なければ Burnside–Dixon 法）

    Raises:
        ComputationOverflow: 位数が上限を超える
        SuppliedTableInvalid: 供給された表が直交関係を満たさない
    """
    if G.order > max_order:
        raise ComputationOverflow(f"群の位数 {G.order} が上限 {max_order} を超えています")
    classes = conjugacy_classes(G)
    conductor = G.exponent

    if supplied:
        characters = []
        for chi in supplied:
            try:
                characters.append(Character(tuple(v.lift(conductor) for v in chi.values)))
            except ValueError as e:
                raise SuppliedTableInvalid(f"指標値の導手が群の指数 {conductor} を割り切りません: {e}") from e
        problems = _check_orthogonality(G, classes, characters)
        if problems:
            raise SuppliedTableInvalid("; ".join(problems))
        logger.info(f"{G.name}: 供給された指標表を検証しました")
    else:
        rows = dixon_character_values(G, classes)
        characters = [Character(tuple(row)) for row in rows]
        problems = _check_orthogonality(G, classes, characters)
        if problems:
            raise ArithmeticError(f"{G.name}: Burnside–Dixon 法の結果が直交関係を満たしません: {problems}")
        logger.info(f"{G.name}: Burnside–Dixon 法で {len(characters)} 個の既約指標を求めました")

    characters = tuple(sorted(characters, key=_canonical_key))
    if G.is_abelian:
        rep_map = _auto_abelian_irreps(G, classes, characters)
    else:
        rep_map = _match_irreps(G, classes, characters, irreps)
        linear = _auto_abelian_irreps(G, classes, characters)
        for i, chi in enumerate(characters):
            if i not in rep_map and chi.degree == 1:
                rep_map[i] = linear[i]
    return CharacterTable(G, classes, characters, rep_map)


# 内積と Frobenius–Schur 指標


def inner_product(psi: VirtualCharacter, phi: VirtualCharacter, table: CharacterTable) -> int:
    """(1/|G|)·Σ_g ψ(g)φ(g⁻¹)"""
    value = table.class_function_product(table.evaluate(psi), table.evaluate(phi))
    if value.denominator != 1:
        raise GroupMismatch(f"内積 {value} が整数ではありません")
    return int(value)


def frobenius_schur(chi: Character, table: CharacterTable) -> int:
    """(1/|G|)·Σ_g χ(g²)

    Raises:
        NotIrreducible: χ が指標表に含まれない
    """
    if chi not in table.characters:
        raise NotIrreducible("Frobenius–Schur 指標は既約指標に対してのみ定義されます")
    G = table.group
    class_of = table.classes.class_of
    total = sum((chi.values[class_of[G.mul[g][g]]] for g in range(G.order)), CyclotomicNumber.zero())
    value = total / G.order
    if not value.is_rational or value.to_rational() not in (-1, 0, 1):
        raise NotIrreducible(f"Frobenius–Schur 指標が -1, 0, 1 のいずれでもありません: {value}")
    return int(value.to_rational())


def frobenius_schur_indicators(table: CharacterTable) -> Tuple[int, ...]:
    return tuple(frobenius_schur(chi, table) for chi in table.characters)


def symplectic_generators(table: CharacterTable) -> List[VirtualCharacter]:
    """R_G^s の標準生成系（指標表の順）

    FS = +1 は 2χ、FS = -1 は χ、FS = 0 は番号の小さい方で χ + χ̄。
    """
    size = len(table)
    generators = []
    for i, fs in enumerate(frobenius_schur_indicators(table)):
        if fs == 1:
            generators.append(VirtualCharacter.basis(size, i, 2))
        elif fs == -1:
            generators.append(VirtualCharacter.basis(size, i))
        else:
            j = table.conjugate_index(i)
            if i < j:
                generators.append(VirtualCharacter.basis(size, i) + VirtualCharacter.basis(size, j))
    return generators


def is_symplectic(psi: VirtualCharacter, table: CharacterTable) -> bool:
    """ψ が標準生成系の整数結合かどうか"""
    if len(psi.coeffs) != len(table):
        raise GroupMismatch("仮想指標の長さが指標表と一致しません")
    for i, fs in enumerate(frobenius_schur_indicators(table)):
        c = psi.coeffs[i]
        if fs == 1 and c % 2:
            return False
        if fs == 0 and c != psi.coeffs[table.conjugate_index(i)]:
            return False
    return True


# 部分群


@dataclass(frozen=True)
class Subgroup:
    """親群の要素番号の部分集合と、番号を振り直した群・指標表"""
    parent: CharacterTable
    elements: Tuple[int, ...]
    table: CharacterTable

    @property
    def order(self) -> int:
        return len(self.elements)

    def local_index(self, element: int) -> int:
        return self.elements.index(element)


def subgroup(table: CharacterTable, elements: Iterable[int], max_order: int = DEFAULT_MAX_ORDER) -> Subgroup:
    """閉じた部分集合から部分群を作る

    Raises:
        NotASubgroup: 単位元を含まないか積で閉じていない
    """
    G = table.group
    members = tuple(sorted(set(int(e) for e in elements)))
    member_set = set(members)
    if not members or G.identity not in member_set:
        raise NotASubgroup(f"単位元 {G.identity} を含みません: {members}")
    if any(not 0 <= e < G.order for e in members):
        raise NotASubgroup(f"範囲外の要素があります: {members}")
    for a in members:
        for b in members:
            if G.mul[a][b] not in member_set:
                raise NotASubgroup(f"{a}·{b} = {G.mul[a][b]} が部分集合に含まれません")

    local = {e: i for i, e in enumerate(members)}
    mul = [[local[G.mul[a][b]] for b in members] for a in members]
    name = f"{G.name}[{','.join(str(e) for e in members)}]"
    H = FiniteGroup.from_table(mul, name=name)
    return Subgroup(table, members, character_table(H, max_order=max_order))


def cyclic_subgroup(table: CharacterTable, generator: int) -> Subgroup:
    G = table.group
    return subgroup(table, {G.power(generator, k) for k in range(G.element_order(generator))})


def restrict(psi: VirtualCharacter, H: Subgroup) -> VirtualCharacter:
    """ψ|_H"""
    values = H.parent.evaluate(psi)
    parent_class = H.parent.classes.class_of
    restricted = tuple(
        values[parent_class[H.elements[rep]]] for rep in H.table.classes.representatives
    )
    return H.table.decompose(restricted)


def induce(H: Subgroup, theta: VirtualCharacter) -> VirtualCharacter:
    """Ind_H^G θ(g) = (1/|H|)·Σ_{x∈G} θ°(x g x⁻¹)"""
    G = H.parent.group
    local_values = H.table.evaluate(theta)
    local_class = H.table.classes.class_of
    position = {e: i for i, e in enumerate(H.elements)}
    zero = CyclotomicNumber.zero(G.exponent)
    induced = []
    for g in H.parent.classes.representatives:
        total = zero
        for x in range(G.order):
            y = G.conjugate_by(x, g)
            if y in position:
                total = total + local_values[local_class[position[y]]]
        induced.append(total / H.order)
    return H.parent.decompose(tuple(induced))


def augmentation_character(I: Subgroup) -> VirtualCharacter:
    """u_I = reg_I − 1_I"""
    return I.table.regular_character() - I.table.trivial_character()

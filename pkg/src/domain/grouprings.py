"""群環 Q[G] の元と行列

加群は行ベクトルで表し、行列は右から作用する（x ↦ x·M）。
正則表現への埋め込みで行列式・逆行列・局所可逆性を判定する。
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Set, Tuple, Union

from sympy import QQ, primefactors
from sympy.polys.matrices import DomainMatrix

from .cycloarith import CycloMatrix, CyclotomicNumber, matrix_determinant
from .errors import GroupMismatch, Singular
from .groupchar import FiniteGroup, IrreducibleRep

Number = Union[int, Fraction]


@dataclass(frozen=True)
class GroupRingElement:
    """Σ_g coeffs[g]·g"""
    group: FiniteGroup = field(compare=False, repr=False, hash=False)
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.group.order:
            raise GroupMismatch(f"係数の数 {len(self.coeffs)} が位数 {self.group.order} と一致しません")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def from_dict(cls, group: FiniteGroup, terms: Mapping[int, Number]) -> "GroupRingElement":
        coeffs = [Fraction(0)] * group.order
        for g, c in terms.items():
            coeffs[int(g)] += Fraction(c)
        return cls(group, tuple(coeffs))

    @classmethod
    def zero(cls, group: FiniteGroup) -> "GroupRingElement":
        return cls(group, (Fraction(0),) * group.order)

    @classmethod
    def scalar(cls, group: FiniteGroup, value: Number) -> "GroupRingElement":
        return cls.from_dict(group, {group.identity: value})

    @classmethod
    def one(cls, group: FiniteGroup) -> "GroupRingElement":
        return cls.scalar(group, 1)

    @classmethod
    def basis(cls, group: FiniteGroup, g: int) -> "GroupRingElement":
        return cls.from_dict(group, {g: 1})

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def support(self) -> Dict[int, Fraction]:
        return {g: c for g, c in enumerate(self.coeffs) if c}

    def _check(self, other: "GroupRingElement") -> None:
        if other.group is not self.group and other.group != self.group:
            raise GroupMismatch("異なる群の群環の元です")

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._check(other)
        return GroupRingElement(self.group, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._check(other)
        return GroupRingElement(self.group, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement(self.group, tuple(-a for a in self.coeffs))

    def __mul__(self, other: Union["GroupRingElement", Number]) -> "GroupRingElement":
        if isinstance(other, (int, Fraction)):
            return GroupRingElement(self.group, tuple(a * other for a in self.coeffs))
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        self._check(other)
        mul = self.group.mul
        coeffs = [Fraction(0)] * self.group.order
        right = other.support()
        for g, a in self.support().items():
            row = mul[g]
            for h, b in right.items():
                coeffs[row[h]] += a * b
        return GroupRingElement(self.group, tuple(coeffs))

    def __rmul__(self, other: Number) -> "GroupRingElement":
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def bar(self) -> "GroupRingElement":
        """Σ x_g g⁻¹"""
        coeffs = [Fraction(0)] * self.group.order
        for g, c in enumerate(self.coeffs):
            coeffs[self.group.inv[g]] = c
        return GroupRingElement(self.group, tuple(coeffs))

    def augmentation(self) -> Fraction:
        return sum(self.coeffs, Fraction(0))

    def to_dict(self) -> Dict[int, Fraction]:
        return self.support()


GroupRingMatrix = Tuple[Tuple[GroupRingElement, ...], ...]


def gr_matrix(group: FiniteGroup, rows: Sequence[Sequence[Union[GroupRingElement, Mapping[int, Number], Number]]]) -> GroupRingMatrix:
    """群環の元・{要素: 係数}・有理数の混在した行列を正規化する"""
    def convert(entry):
        if isinstance(entry, GroupRingElement):
            return entry
        if isinstance(entry, Mapping):
            return GroupRingElement.from_dict(group, entry)
        return GroupRingElement.scalar(group, entry)

    return tuple(tuple(convert(e) for e in row) for row in rows)


def gr_identity(group: FiniteGroup, size: int) -> GroupRingMatrix:
    return tuple(
        tuple(GroupRingElement.one(group) if i == j else GroupRingElement.zero(group) for j in range(size))
        for i in range(size)
    )


def gr_zero(group: FiniteGroup, rows: int, cols: int) -> GroupRingMatrix:
    return tuple(tuple(GroupRingElement.zero(group) for _ in range(cols)) for _ in range(rows))


def gr_multiply(group: FiniteGroup, a: GroupRingMatrix, b: GroupRingMatrix) -> GroupRingMatrix:
    inner = len(b)
    cols = len(b[0]) if b else 0
    result = []
    for row in a:
        if len(row) != inner:
            raise GroupMismatch("行列のサイズが合いません")
        out = []
        for j in range(cols):
            total = GroupRingElement.zero(group)
            for t in range(inner):
                if not row[t].is_zero and not b[t][j].is_zero:
                    total = total + row[t] * b[t][j]
            out.append(total)
        result.append(tuple(out))
    return tuple(result)


def gr_transpose(a: GroupRingMatrix) -> GroupRingMatrix:
    return tuple(zip(*a)) if a else ()


def gr_is_zero(a: GroupRingMatrix) -> bool:
    return all(e.is_zero for row in a for e in row)


def gr_apply_row(group: FiniteGroup, x: Sequence[GroupRingElement], m: GroupRingMatrix) -> Tuple[GroupRingElement, ...]:
    """行ベクトル x·M"""
    return gr_multiply(group, (tuple(x),), m)[0] if m else ()


def gr_direct_sum(group: FiniteGroup, a: GroupRingMatrix, b: GroupRingMatrix, a_cols: int = None, b_cols: int = None) -> GroupRingMatrix:
    """ブロック対角行列"""
    a_cols = len(a[0]) if a else (a_cols or 0)
    b_cols = len(b[0]) if b else (b_cols or 0)
    zero = GroupRingElement.zero(group)
    rows = [tuple(row) + (zero,) * b_cols for row in a]
    rows += [(zero,) * a_cols + tuple(row) for row in b]
    return tuple(rows)


def augment_matrix(a: GroupRingMatrix) -> List[List[Fraction]]:
    """成分ごとの添加写像 ε"""
    return [[e.augmentation() for e in row] for row in a]


# 正則表現


def right_regular(b: GroupRingElement) -> List[List[Fraction]]:
    """右乗法 x ↦ x·b の行列 R(b)[g][h] = b_{g⁻¹h}"""
    G = b.group
    return [[b.coeffs[G.mul[G.inv[g]][h]] for h in range(G.order)] for g in range(G.order)]


def left_regular(y: GroupRingElement) -> List[List[Fraction]]:
    """左乗法 x ↦ y·x の行列 L(y)[k][h] = y_{hk⁻¹}"""
    G = y.group
    return [[y.coeffs[G.mul[h][G.inv[k]]] for h in range(G.order)] for k in range(G.order)]


def regular_matrix(group: FiniteGroup, m: GroupRingMatrix) -> List[List[Fraction]]:
    """Q[G]^d 上の右作用の有理行列（ブロック (j,k) = R(m[j][k])）"""
    n = group.order
    rows = len(m)
    cols = len(m[0]) if m else 0
    big = [[Fraction(0)] * (cols * n) for _ in range(rows * n)]
    for j in range(rows):
        for k in range(cols):
            if m[j][k].is_zero:
                continue
            block = right_regular(m[j][k])
            for g in range(n):
                big[j * n + g][k * n: (k + 1) * n] = block[g]
    return big


def _domain_matrix(rows: Sequence[Sequence[Fraction]]) -> DomainMatrix:
    return DomainMatrix([[QQ(c.numerator, c.denominator) for c in row] for row in rows], (len(rows), len(rows[0]) if rows else 0), QQ)


def _to_fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def regular_determinant(group: FiniteGroup, m: GroupRingMatrix) -> Fraction:
    if not m:
        return Fraction(1)
    return _to_fraction(_domain_matrix(regular_matrix(group, m)).det())


def gr_inverse(group: FiniteGroup, m: GroupRingMatrix) -> GroupRingMatrix:
    """Q[G] 上の逆行列

    Raises:
        Singular: 正則表現の行列式が 0
    """
    size = len(m)
    if size == 0:
        return ()
    big = _domain_matrix(regular_matrix(group, m))
    if big.det() == 0:
        raise Singular("群環上の行列が可逆ではありません")
    inverse = big.inv().to_list()
    n = group.order
    e = group.identity
    rows = []
    for j in range(size):
        row = []
        for k in range(size):
            coeffs = [_to_fraction(inverse[j * n + e][k * n + h]) for h in range(n)]
            row.append(GroupRingElement(group, tuple(coeffs)))
        rows.append(tuple(row))
    return tuple(rows)


def _p_integral(c: Fraction, p: int) -> bool:
    return c.denominator % p != 0


def is_invertible_over_Q(group: FiniteGroup, m: GroupRingMatrix) -> bool:
    return regular_determinant(group, m) != 0


def is_invertible_over_Zp(group: FiniteGroup, m: GroupRingMatrix, p: int) -> bool:
    """成分が p 整かつ正則表現の行列式が p 進単数"""
    if not all(_p_integral(c, p) for row in m for e in row for c in e.coeffs):
        return False
    det = regular_determinant(group, m)
    return det != 0 and det.numerator % p != 0 and det.denominator % p != 0


def is_invertible_over_Z(group: FiniteGroup, m: GroupRingMatrix) -> bool:
    if not all(e.is_integral for row in m for e in row):
        return False
    return abs(regular_determinant(group, m)) == 1


def bad_primes(group: FiniteGroup, m: GroupRingMatrix) -> Set[int]:
    """成分の分母または正則表現の行列式に現れる素数"""
    primes: Set[int] = set()
    for row in m:
        for e in row:
            for c in e.coeffs:
                if c.denominator != 1:
                    primes.update(primefactors(c.denominator))
    det = regular_determinant(group, m)
    if det == 0:
        raise Singular("群環上の行列が可逆ではありません")
    primes.update(primefactors(det.numerator))
    primes.update(primefactors(det.denominator))
    return {int(p) for p in primes}


# 既約表現による評価


def represent(x: GroupRingElement, rep: IrreducibleRep) -> CycloMatrix:
    """T(x) = Σ_g x_g T(g)"""
    dim = rep.dim
    zero = CyclotomicNumber.zero()
    entries = [[zero] * dim for _ in range(dim)]
    for g, c in x.support().items():
        mat = rep.matrices[g]
        for a in range(dim):
            for b in range(dim):
                if not mat[a][b].is_zero:
                    entries[a][b] = entries[a][b] + mat[a][b] * c
    return tuple(tuple(row) for row in entries)


def represent_matrix(m: GroupRingMatrix, rep: IrreducibleRep) -> CycloMatrix:
    """成分ごとに T を適用したブロック行列"""
    dim = rep.dim
    rows = len(m)
    cols = len(m[0]) if m else 0
    zero = CyclotomicNumber.zero()
    big = [[zero] * (cols * dim) for _ in range(rows * dim)]
    for j in range(rows):
        for k in range(cols):
            block = represent(m[j][k], rep)
            for a in range(dim):
                big[j * dim + a][k * dim: (k + 1) * dim] = block[a]
    return tuple(tuple(row) for row in big)


def rep_determinant(m: GroupRingMatrix, rep: IrreducibleRep) -> CyclotomicNumber:
    if not m:
        return CyclotomicNumber.one()
    return matrix_determinant(represent_matrix(m, rep))


def group_ring_sum(elements: Iterable[GroupRingElement], group: FiniteGroup) -> GroupRingElement:
    total = GroupRingElement.zero(group)
    for e in elements:
        total = total + e
    return total

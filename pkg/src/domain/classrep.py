"""算術類群 A(Z[G]) の代表元

有限イデール部分（素数ごとの円分数値）と無限部分（正の実数）の対で類を表す。
類の等号は一般には判定できないので、θ、1_G 座標、γ などの射影で比較する。
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy import factorint

from .cycloarith import CyclotomicNumber, galois_apply, galois_group
from .errors import (
    DescriptorError,
    GroupMismatch,
    NotRationalSquare,
    NotVisiblyRational,
    OddPairing,
    OddProduct,
    Singular,
)
from .groupchar import (
    CharacterTable,
    Subgroup,
    VirtualCharacter,
    augmentation_character,
    inner_product,
    restrict,
    symplectic_generators,
)
from .grouprings import GroupRingMatrix, rep_determinant

logger = logging.getLogger(__name__)


# 無限素点の値


@dataclass(frozen=True)
class ArchValue:
    """正の実数（相対誤差と、|有理数| のときの厳密値）"""
    value: float
    tol: float = 0.0
    exact: Optional[Fraction] = None

    def __post_init__(self):
        if self.exact is not None:
            exact = abs(Fraction(self.exact))
            object.__setattr__(self, "exact", exact)
            object.__setattr__(self, "value", float(exact))
        if not self.value > 0:
            raise ValueError(f"無限部分の値は正である必要があります: {self.value}")

    @classmethod
    def one(cls) -> "ArchValue":
        return cls(1.0, 0.0, Fraction(1))

    @classmethod
    def of_rational(cls, q) -> "ArchValue":
        return cls(float(abs(Fraction(q))), 0.0, abs(Fraction(q)))

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def __mul__(self, other: "ArchValue") -> "ArchValue":
        exact = self.exact * other.exact if self.is_exact and other.is_exact else None
        return ArchValue(self.value * other.value, self.tol + other.tol, exact)

    def inverse(self) -> "ArchValue":
        return ArchValue(1.0 / self.value, self.tol, 1 / self.exact if self.is_exact else None)

    def __truediv__(self, other: "ArchValue") -> "ArchValue":
        return self * other.inverse()

    def __pow__(self, k: int) -> "ArchValue":
        exact = self.exact ** k if self.is_exact else None
        return ArchValue(self.value ** k, abs(k) * self.tol, exact)

    def root(self, n: int) -> "ArchValue":
        """n 乗根（厳密値は有理数になるときのみ保持）"""
        exact = _rational_root(self.exact, n) if self.is_exact else None
        return ArchValue(self.value ** (1.0 / n), self.tol / n, exact)

    def close_to(self, other: "ArchValue", rel_tol: float) -> bool:
        if self.is_exact and other.is_exact:
            return self.exact == other.exact
        return math.isclose(self.value, other.value, rel_tol=rel_tol + self.tol + other.tol)


def _rational_root(q: Fraction, n: int) -> Optional[Fraction]:
    num = round(q.numerator ** (1.0 / n))
    den = round(q.denominator ** (1.0 / n))
    for a in (num - 1, num, num + 1):
        for b in (den - 1, den, den + 1):
            if a > 0 and b > 0 and Fraction(a, b) ** n == q:
                return Fraction(a, b)
    return None


# 類の代表元


@dataclass(frozen=True)
class ArithClassRep:
    """(有限イデール部分, 無限部分) の準同型の組

    fin[p][i] は既約指標 i での p 成分（台の外では 1）、arch[i] は無限部分。
    """
    table: CharacterTable = field(compare=False, repr=False, hash=False)
    fin: Dict[int, Tuple[CyclotomicNumber, ...]]
    arch: Tuple[ArchValue, ...]

    def __post_init__(self):
        size = len(self.table)
        if len(self.arch) != size:
            raise GroupMismatch(f"無限部分の長さ {len(self.arch)} が指標の数 {size} と一致しません")
        cleaned = {}
        for p, values in sorted(self.fin.items()):
            values = tuple(values)
            if len(values) != size:
                raise GroupMismatch(f"素数 {p} の値の長さが指標の数と一致しません")
            if any(v.is_zero for v in values):
                raise Singular(f"素数 {p} で値 0 があります")
            if any(v != 1 for v in values):
                cleaned[int(p)] = values
        object.__setattr__(self, "fin", cleaned)

    @classmethod
    def identity(cls, table: CharacterTable) -> "ArithClassRep":
        return cls(table, {}, tuple(ArchValue.one() for _ in range(len(table))))

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(self.fin)

    def fin_value(self, p: int, index: int) -> CyclotomicNumber:
        values = self.fin.get(p)
        return values[index] if values else CyclotomicNumber.one()

    def _check(self, other: "ArithClassRep") -> None:
        if other.table is not self.table and other.table != self.table:
            raise GroupMismatch("異なる群の類の代表元です")

    def __mul__(self, other: "ArithClassRep") -> "ArithClassRep":
        self._check(other)
        size = len(self.table)
        fin = {}
        for p in set(self.fin) | set(other.fin):
            fin[p] = tuple(self.fin_value(p, i) * other.fin_value(p, i) for i in range(size))
        arch = tuple(a * b for a, b in zip(self.arch, other.arch))
        return ArithClassRep(self.table, fin, arch)

    def inverse(self) -> "ArithClassRep":
        fin = {p: tuple(v.inverse() for v in values) for p, values in self.fin.items()}
        return ArithClassRep(self.table, fin, tuple(a.inverse() for a in self.arch))

    def __truediv__(self, other: "ArithClassRep") -> "ArithClassRep":
        return self * other.inverse()

    def evaluate(self, psi: VirtualCharacter) -> Tuple[Dict[int, CyclotomicNumber], ArchValue]:
        """乗法性による仮想指標での値"""
        fin = {}
        for p in self.fin:
            value = CyclotomicNumber.one()
            for i, c in psi.support().items():
                value = value * self.fin[p][i] ** c
            if value != 1:
                fin[p] = value
        arch = ArchValue.one()
        for i, c in psi.support().items():
            arch = arch * self.arch[i] ** c
        return fin, arch

    def equals(self, other: "ArithClassRep", rel_tol: float = 1e-9) -> bool:
        """代表元としての一致（有限部分は厳密、無限部分は相対誤差）"""
        self._check(other)
        if self.fin != other.fin:
            return False
        return all(a.close_to(b, rel_tol) for a, b in zip(self.arch, other.arch))


def one_G_coordinate(a: ArithClassRep) -> Tuple[Dict[int, CyclotomicNumber], ArchValue]:
    """自明指標での値"""
    return {p: values[0] for p, values in a.fin.items()}, a.arch[0]


def tilde(a: ArithClassRep) -> ArithClassRep:
    """f̃(χ) = f(χ)/f(1_G)^{χ(1)}"""
    degrees = a.table.degrees
    fin = {
        p: tuple(values[i] / values[0] ** degrees[i] for i in range(len(values)))
        for p, values in a.fin.items()
    }
    arch = tuple(a.arch[i] / a.arch[0] ** degrees[i] for i in range(len(a.arch)))
    return ArithClassRep(a.table, fin, arch)


def is_galois_equivariant(values: Sequence[CyclotomicNumber], table: CharacterTable) -> bool:
    """f(χ^ω) = ω(f(χ)) を導手 exponent の全ての ω で確かめる"""
    for omega in galois_group(table.conductor):
        for i in range(len(table)):
            if values[table.galois_action(i, omega)] != galois_apply(omega, values[i]):
                return False
    return True


def class_invariants(a: ArithClassRep) -> Tuple[ArchValue, ...]:
    """φ ごとの ∏_p p^{v_p(N f_p(φ))} / ∏_ω f_∞(φ^ω)

    局所単数の Det と大域元の対角像で不変なので、代表元の取り方によらない。
    ノルムは Q(ζ_n)（n は指標表の導手）から Q へ取る。
    """
    table = a.table
    n = table.conductor
    omegas = galois_group(n)
    invariants = []
    for i in range(len(table)):
        content_value = Fraction(1)
        for p, values in a.fin.items():
            x = values[i]
            if n % x.n:
                raise GroupMismatch(f"値 {x} が Q(ζ_{n}) に含まれません")
            norm = CyclotomicNumber.one(n)
            for omega in omegas:
                norm = norm * galois_apply(omega, x)
            content_value *= Fraction(p) ** _p_adic_valuation(norm.to_rational(), p)
        arch = ArchValue.one()
        for omega in omegas:
            arch = arch * a.arch[table.galois_action(i, omega)]
        invariants.append(ArchValue.of_rational(content_value) / arch)
    return tuple(invariants)


def same_class(a: ArithClassRep, b: ArithClassRep, rel_tol: float = 1e-9) -> bool:
    """class_invariants による比較（等しい類なら必ず True）"""
    return all(x.close_to(y, rel_tol) for x, y in zip(class_invariants(a), class_invariants(b)))


# 単数の Det


def det_of_unit(x: GroupRingMatrix, table: CharacterTable) -> Tuple[CyclotomicNumber, ...]:
    """Det(x)(ψ) = det T_ψ(x)

    Raises:
        Singular: ある既約指標で値が 0
    """
    missing = [i for i in range(len(table)) if i not in table.irreps]
    if missing:
        raise DescriptorError(
            table.group.name or "group",
            [f"既約指標 χ{i} の表現行列がありません" for i in missing],
        )
    values = []
    for i in range(len(table)):
        value = rep_determinant(x, table.irreps[i])
        if value.is_zero:
            raise Singular(f"Det(x)(χ{i}) = 0 です")
        values.append(value)
    return tuple(values)


@dataclass(frozen=True)
class TorsionModulePresentation:
    """有限加群の表示 0 → Z_p[G]^d →α Z_p[G]^d → M → 0"""
    p: int
    alpha: GroupRingMatrix


def torsion_class(M: TorsionModulePresentation, table: CharacterTable) -> ArithClassRep:
    """ν(M) を Det(α) で代表する（無限部分は 1）"""
    values = det_of_unit(M.alpha, table)
    arch = tuple(ArchValue.one() for _ in range(len(table)))
    return ArithClassRep(table, {M.p: values}, arch)


# シンプレクティック制限と θ


@dataclass(frozen=True)
class SymplecticClassRep:
    """シンプレクティック生成系上の値（生成元ごとに素数 → 値、無限部分）"""
    generators: Tuple[VirtualCharacter, ...]
    degrees: Tuple[int, ...]
    fin: Dict[int, Tuple[CyclotomicNumber, ...]]
    arch: Tuple[ArchValue, ...]

    def __post_init__(self):
        size = len(self.generators)
        if len(self.arch) != size or len(self.degrees) != size:
            raise GroupMismatch("生成系の長さが一致しません")
        cleaned = {}
        for p, values in sorted(self.fin.items()):
            values = tuple(values)
            if len(values) != size:
                raise GroupMismatch(f"素数 {p} の値の長さが生成系と一致しません")
            if any(v != 1 for v in values):
                cleaned[int(p)] = values
        object.__setattr__(self, "fin", cleaned)

    def fin_value(self, p: int, index: int) -> CyclotomicNumber:
        values = self.fin.get(p)
        return values[index] if values else CyclotomicNumber.one()

    def _check(self, other: "SymplecticClassRep") -> None:
        if self.generators != other.generators:
            raise GroupMismatch("異なる生成系の代表元です")

    def __mul__(self, other: "SymplecticClassRep") -> "SymplecticClassRep":
        self._check(other)
        size = len(self.generators)
        fin = {
            p: tuple(self.fin_value(p, i) * other.fin_value(p, i) for i in range(size))
            for p in set(self.fin) | set(other.fin)
        }
        arch = tuple(a * b for a, b in zip(self.arch, other.arch))
        return SymplecticClassRep(self.generators, self.degrees, fin, arch)

    def inverse(self) -> "SymplecticClassRep":
        fin = {p: tuple(v.inverse() for v in values) for p, values in self.fin.items()}
        return SymplecticClassRep(self.generators, self.degrees, fin, tuple(a.inverse() for a in self.arch))

    def __truediv__(self, other: "SymplecticClassRep") -> "SymplecticClassRep":
        return self * other.inverse()

    def tilde(self) -> "SymplecticClassRep":
        """f̃(ψ) = f(ψ)·f(2·1_G)^{−ψ(1)/2}（生成元 0 番が 2·1_G）"""
        halves = [d // 2 for d in self.degrees]
        fin = {
            p: tuple(values[i] / values[0] ** halves[i] for i in range(len(values)))
            for p, values in self.fin.items()
        }
        arch = tuple(self.arch[i] / self.arch[0] ** halves[i] for i in range(len(self.arch)))
        return SymplecticClassRep(self.generators, self.degrees, fin, arch)


def restrict_symplectic(a: ArithClassRep, gens: Optional[Sequence[VirtualCharacter]] = None) -> SymplecticClassRep:
    """R_G^s への制限 ρ"""
    gens = tuple(symplectic_generators(a.table) if gens is None else gens)
    fin: Dict[int, List[CyclotomicNumber]] = {p: [] for p in a.fin}
    arch = []
    for psi in gens:
        fin_values, arch_value = a.evaluate(psi)
        for p in a.fin:
            fin[p].append(fin_values.get(p, CyclotomicNumber.one()))
        arch.append(arch_value)
    degrees = tuple(psi.degree(a.table) for psi in gens)
    return SymplecticClassRep(gens, degrees, {p: tuple(v) for p, v in fin.items()}, tuple(arch))


@dataclass(frozen=True)
class RationalSymplecticClass:
    """Hom_Ω(R_G^s, Q^×) の元"""
    generators: Tuple[VirtualCharacter, ...]
    values: Tuple[Fraction, ...]

    def __post_init__(self):
        if any(v == 0 for v in self.values):
            raise ValueError("θ の値は 0 以外である必要があります")

    def value(self, psi: VirtualCharacter) -> Fraction:
        return self.values[self.generators.index(psi)]


def theta_rational(s: SymplecticClassRep) -> RationalSymplecticClass:
    """θ(h) = h_f·h'_∞⁻¹ を目に見えて有理な代表元に対して計算する

    Raises:
        NotVisiblyRational: 有限部分が全素数で同じ有理数でないか、無限部分が厳密でない
    """
    values = []
    for i, psi in enumerate(s.generators):
        candidates = set()
        for p, vals in s.fin.items():
            v = vals[i]
            if not v.is_rational:
                raise NotVisiblyRational(f"生成元 {psi.label()} の素数 {p} での値が有理数ではありません: {v}")
            candidates.add(v.to_rational())
        r = Fraction(1)
        if len(candidates) > 1:
            active = {c for c in candidates if c != 1}
            if len(active) != 1:
                raise NotVisiblyRational(f"生成元 {psi.label()} の有限部分が素数ごとに異なります: {sorted(candidates)}")
            r = active.pop()
            uncovered = [p for p in factorint(abs(r.numerator) * r.denominator) if s.fin_value(p, i) != r]
            if uncovered:
                raise NotVisiblyRational(f"生成元 {psi.label()} の値 {r} が素数 {uncovered} で欠けています")
        elif candidates:
            r = candidates.pop()
        arch = s.arch[i]
        if not arch.is_exact:
            raise NotVisiblyRational(f"生成元 {psi.label()} の無限部分が厳密な有理数ではありません: {arch.value}")
        values.append(r / arch.exact)
    return RationalSymplecticClass(s.generators, tuple(values))


# Pfaffian と δ_K, ξ_S


def pfaffian_exponent_twice(parent: CharacterTable, inertia: Subgroup, psi: VirtualCharacter, residue_degree: int = 1) -> int:
    """f·(ψ, Ind_I^G u_I) = f·(ψ|_I, u_I)"""
    u = augmentation_character(inertia)
    return residue_degree * inner_product(restrict(psi, inertia), u, inertia.table)


def pfaffian_p(p: int, parent: CharacterTable, inertia: Subgroup, psi: VirtualCharacter, residue_degree: int = 1) -> Fraction:
    """Pf_p(ψ) = (−p)^{½·f·(ψ, Ind u)}

    Raises:
        OddPairing: 指数が整数にならない
    """
    twice = pfaffian_exponent_twice(parent, inertia, psi, residue_degree)
    if twice % 2:
        raise OddPairing(f"p={p}: (ψ, Ind u) = {twice} が偶数ではありません")
    return Fraction(-p) ** (twice // 2)


def delta_K(k_degree: int, d_K: int, order: int, psi_degree: int) -> ArchValue:
    """δ_K(ψ) = (|G|^{[K:Q]}|d_K|)^{ψ(1)/2}"""
    base = Fraction(order) ** k_degree * abs(d_K)
    if psi_degree % 2 == 0:
        return ArchValue.of_rational(base ** (psi_degree // 2))
    root = _rational_root(base, 2)
    if root is not None:
        return ArchValue.of_rational(root ** psi_degree)
    return ArchValue(float(base) ** (psi_degree / 2), 1e-15)


def delta_Q(order: int, psi_degree: int) -> ArchValue:
    return delta_K(1, 1, order, psi_degree)


def xi_S(S: Iterable[int], d: int, chiY: int, psi_degree: int) -> Fraction:
    """ξ_S(ψ) = ∏_{p∈S} p^{−ψ(1)·d·χ(Y)/2}

    Raises:
        OddProduct: d·χ(Y) が奇数
    """
    if (d * chiY) % 2:
        raise OddProduct(f"d·χ(Y) = {d * chiY} が偶数ではありません")
    exponent = -psi_degree * (d * chiY // 2)
    result = Fraction(1)
    for p in sorted(set(S)):
        result *= Fraction(p) ** exponent
    return result


# 自明群の場合


def _p_adic_valuation(q: Fraction, p: int) -> int:
    v = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _require_trivial(a: ArithClassRep) -> None:
    if a.table.group.order != 1:
        raise GroupMismatch(f"自明群の類ではありません（位数 {a.table.group.order}）")


def content(a: ArithClassRep) -> Fraction:
    """c(j) = ∏_p p^{v_p(j_p)}"""
    _require_trivial(a)
    c = Fraction(1)
    for p, values in a.fin.items():
        c *= Fraction(p) ** _p_adic_valuation(values[0].to_rational(), p)
    return c


def degree_map_trivialG(a: ArithClassRep) -> ArchValue:
    """γ(j, r) = c(j)·r⁻¹"""
    return ArchValue.of_rational(content(a)) / a.arch[0]


def square_rationality(a: ArithClassRep) -> Fraction:
    """γ(a)²

    Raises:
        NotRationalSquare: 無限部分が厳密でない
    """
    gamma = degree_map_trivialG(a)
    if not gamma.is_exact:
        raise NotRationalSquare(f"γ² = {gamma.value ** 2} が厳密な有理数として得られません")
    return gamma.exact ** 2


def ind_from_trivial(a: ArithClassRep, target: CharacterTable) -> ArithClassRep:
    """Ind(f)(ψ) = f(ψ(1)·1)"""
    _require_trivial(a)
    degrees = target.degrees
    fin = {p: tuple(values[0] ** d for d in degrees) for p, values in a.fin.items()}
    arch = tuple(a.arch[0] ** d for d in degrees)
    return ArithClassRep(target, fin, arch)


def from_values(table: CharacterTable, fin: Mapping[int, Sequence[CyclotomicNumber]], arch: Sequence[ArchValue]) -> ArithClassRep:
    return ArithClassRep(table, {int(p): tuple(v) for p, v in fin.items()}, tuple(arch))

"""Burnside–Dixon 法による指標表の計算

有限体 F_p 上で類乗法行列の同時固有空間分解を行い、
固有値の重複度を使って Q(ζ_e) へ持ち上げる。
"""
from math import isqrt
from typing import List, Sequence

from sympy import FiniteField, Poly, Symbol, nextprime, primitive_root, sqrt_mod
from sympy.polys.matrices import DomainMatrix

from .cycloarith import CyclotomicNumber


def dixon_prime(order: int, exponent: int) -> int:
    """p ≡ 1 (mod exponent) かつ p > 2·√|G|·exponent となる最小の素数"""
    bound_sq = 4 * order * exponent * exponent
    p = isqrt(bound_sq)
    while True:
        p = int(nextprime(p))
        if p * p > bound_sq and p % exponent == 1:
            return p


def class_multiplication_matrix(mul, inv, classes, class_of, r: int) -> List[List[int]]:
    """M_r[k][l] = #{x ∈ C_r : x⁻¹z_l ∈ C_k}（z_l は C_l の代表元）"""
    n = len(classes)
    m = [[0] * n for _ in range(n)]
    for l, cls in enumerate(classes):
        z = cls[0]
        for x in classes[r]:
            m[class_of[mul[inv[x]][z]]][l] += 1
    return m


def eigenspace_decomposition(A: DomainMatrix) -> List[DomainMatrix]:
    """行ベクトル v A = z v の固有空間（各空間は行基底）"""
    At = A.transpose()
    Fp = A.domain
    p = Fp.mod
    charpoly = Poly(At.charpoly(), Symbol("x"), domain=Fp)
    size = At.shape[0]
    spaces = []
    for z in sorted(int(root) % p for root in charpoly.ground_roots()):
        B = At - DomainMatrix.diag([Fp.convert(z)] * size, Fp)
        basis, _ = B.nullspace().rref()
        spaces.append(basis)
    return spaces


def refine_spaces(spaces: List[DomainMatrix], M: Sequence[Sequence[int]], Fp) -> List[DomainMatrix]:
    At = DomainMatrix.from_list([list(row) for row in M], Fp).transpose()
    refined = []
    for S in spaces:
        if S.shape[0] <= 1:
            refined.append(S)
            continue
        S, pivots = S.rref()
        C = (S * At).extract(list(range(S.shape[0])), list(pivots))
        for sub in eigenspace_decomposition(C):
            refined.append(sub * S)
    return refined


def common_eigenvectors(matrices: List[List[List[int]]], Fp) -> List[List[int]]:
    """全ての類乗法行列に共通な固有ベクトル（ω_χ の mod p 像）"""
    n = len(matrices[0])
    spaces = [DomainMatrix.eye(n, Fp)]
    for M in matrices:
        if len(spaces) == n:
            break
        spaces = refine_spaces(spaces, M, Fp)
    if len(spaces) != n or any(S.shape[0] != 1 for S in spaces):
        raise ArithmeticError("類乗法行列の同時固有空間分解に失敗しました")
    p = Fp.mod
    return [[int(x) % p for x in S.to_list()[0]] for S in spaces]


def _normalize(vector: List[int], class_sizes, inverse_class, order: int, p: int) -> List[int]:
    """ω から χ(g_k) mod p を復元する"""
    scale = pow(vector[0], -1, p)
    omega = [(x * scale) % p for x in vector]
    ratios = [(omega[k] * pow(class_sizes[k], -1, p)) % p for k in range(len(omega))]
    dot = sum(class_sizes[k] * ratios[k] * ratios[inverse_class[k]] for k in range(len(omega))) % p
    degree_sq = (order * pow(dot, -1, p)) % p
    root = sqrt_mod(degree_sq, p)
    if root is None:
        raise ArithmeticError(f"F_{p} で χ(1)² = {degree_sq} の平方根が存在しません")
    # χ(1) ≤ √|G| < p/2
    degree = min(int(root), p - int(root))
    return [(degree * x) % p for x in ratios]


def _lift(values_mod_p: List[int], power_classes: List[List[int]], exponent: int, p: int) -> List[CyclotomicNumber]:
    """固有値 ζ_e^t の重複度 m_t を求めて χ(g) = Σ m_t ζ_e^t とする"""
    x = pow(int(primitive_root(p)), (p - 1) // exponent, p)
    e_inv = pow(exponent, -1, p)
    degree = values_mod_p[0]
    lifted = []
    for powers in power_classes:
        multiplicities = {}
        for t in range(exponent):
            total = sum(values_mod_p[powers[j]] * pow(x, (-j * t) % exponent, p) for j in range(exponent))
            m_t = (total * e_inv) % p
            if m_t > degree:
                raise ArithmeticError(f"固有値の重複度 {m_t} が次数 {degree} を超えました")
            if m_t:
                multiplicities[t] = m_t
        if sum(multiplicities.values()) != degree:
            raise ArithmeticError("固有値の重複度の和が次数と一致しません")
        lifted.append(CyclotomicNumber.from_exponents(exponent, multiplicities))
    return lifted


def dixon_character_values(group, classes) -> List[List[CyclotomicNumber]]:
    """既約指標の値（類ごと）を導手 exponent の円分数で返す（順序は未整列）"""
    order, exponent = group.order, group.exponent
    class_list = classes.classes
    if len(class_list) == 1:
        return [[CyclotomicNumber.one(exponent)]]

    p = dixon_prime(order, exponent)
    Fp = FiniteField(p)
    matrices = [
        class_multiplication_matrix(group.mul, group.inv, class_list, classes.class_of, r)
        for r in range(1, len(class_list))
    ]
    vectors = common_eigenvectors(matrices, Fp)

    class_sizes = [len(c) for c in class_list]
    inverse_class = [classes.class_of[group.inv[c[0]]] for c in class_list]
    power_classes = [
        [classes.class_of[group.power(c[0], j)] for j in range(exponent)]
        for c in class_list
    ]
    rows = []
    for vector in vectors:
        values = _normalize(vector, class_sizes, inverse_class, order, p)
        rows.append(_lift(values, power_classes, exponent, p))
    return rows

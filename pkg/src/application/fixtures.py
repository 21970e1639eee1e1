"""検証スイート用の乱数入力

乱数は入力の生成にだけ使い、数学的な結果には使わない。
同じ seed とスイート名からは同じ列が得られる。
"""
import random
import zlib
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..domain.classrep import ArchValue, ArithClassRep
from ..domain.cycloarith import CyclotomicNumber
from ..domain.groupchar import CharacterTable, FiniteGroup, Subgroup, VirtualCharacter, subgroup
from ..domain.grouprings import (
    GroupRingElement,
    GroupRingMatrix,
    gr_direct_sum,
    gr_identity,
    gr_matrix,
    gr_multiply,
    gr_zero,
    is_invertible_over_Q,
)
from ..domain.metcomplex import ChainMap, PerfectComplex

MAX_TRIES = 50


def suite_random(seed: int, suite: str) -> Tuple[random.Random, np.random.Generator]:
    """スイートごとに独立した乱数源"""
    salt = zlib.crc32(suite.encode("utf-8"))
    return random.Random(seed * 1_000_003 + salt), np.random.default_rng([seed, salt])


# 群環


def random_element(G: FiniteGroup, rnd: random.Random, terms: int = 2, bound: int = 2) -> GroupRingElement:
    """小さな整数係数の元"""
    coeffs = {}
    for _ in range(terms):
        g = rnd.randrange(G.order)
        coeffs[g] = coeffs.get(g, 0) + rnd.randint(-bound, bound)
    return GroupRingElement.from_dict(G, coeffs)


def elementary(G: FiniteGroup, size: int, a: int, b: int, x: GroupRingElement) -> GroupRingMatrix:
    """単位行列の (a, b) 成分に x を足したもの"""
    rows = [list(row) for row in gr_identity(G, size)]
    rows[a][b] = rows[a][b] + x
    return gr_matrix(G, rows)


def diagonal(G: FiniteGroup, entries: Sequence[GroupRingElement]) -> GroupRingMatrix:
    size = len(entries)
    rows = [list(row) for row in gr_zero(G, size, size)]
    for i, e in enumerate(entries):
        rows[i][i] = e
    return gr_matrix(G, rows)


def random_unimodular(G: FiniteGroup, size: int, rnd: random.Random, p: Optional[int] = None, steps: int = 3) -> GroupRingMatrix:
    """GL_size(Z[G]) の元。p を与えると Z_p[G] の単数 1 + p·x と p と素な整数も混ぜる"""
    def unit(k: int) -> GroupRingElement:
        e = GroupRingElement.basis(G, rnd.randrange(G.order)) * rnd.choice((1, -1))
        if p is not None and rnd.random() < 0.5:
            e = e * (GroupRingElement.one(G) + random_element(G, rnd) * p)
        if p is not None and rnd.random() < 0.3:
            e = e * rnd.choice([c for c in (2, 3, 5, 7) if c != p])
        return e

    M = diagonal(G, [unit(k) for k in range(size)])
    for _ in range(steps if size > 1 else 0):
        a, b = rnd.sample(range(size), 2)
        M = gr_multiply(G, M, elementary(G, size, a, b, random_element(G, rnd)))
    return M


def random_rational_invertible(G: FiniteGroup, size: int, rnd: random.Random) -> GroupRingMatrix:
    """GL_size(Q[G]) の元（小さな整数係数）"""
    for _ in range(MAX_TRIES):
        M = gr_matrix(G, [[random_element(G, rnd, terms=2, bound=3) for _ in range(size)] for _ in range(size)])
        if is_invertible_over_Q(G, M):
            return M
    return diagonal(G, [GroupRingElement.scalar(G, 2)] * size)


# 複体


def random_two_term_complex(G: FiniteGroup, rnd: random.Random, rank: Optional[int] = None, name: str = "random") -> PerfectComplex:
    """次数 0, 1 の 2 項複体 Z[G]^d → Z[G]^d"""
    d = rank if rank is not None else rnd.choice((1, 1, 2))
    B = gr_matrix(G, [[random_element(G, rnd, terms=2, bound=2) for _ in range(d)] for _ in range(d)])
    return PerfectComplex(G, 0, (d, d), (B,), name)


def acyclic_complex(G: FiniteGroup, rnd: random.Random, rank: int = 1) -> PerfectComplex:
    """境界が GL(Z[G]) の元である Z 上完全な複体"""
    U = random_unimodular(G, rank, rnd)
    return PerfectComplex(G, 0, (rank, rank), (U,), "acyclic")


def quasi_iso_pair(G: FiniteGroup, rnd: random.Random) -> Tuple[ChainMap, PerfectComplex, PerfectComplex]:
    """C と D = C ⊕ E（E は非輪状）を包含または射影で結んだ擬同型"""
    C = random_two_term_complex(G, rnd, name="C")
    E = acyclic_complex(G, rnd, rank=rnd.choice((1, 2)))
    B = gr_direct_sum(G, C.boundaries[0], E.boundaries[0], C.rank(0), E.rank(0))
    D = PerfectComplex(G, 0, (C.rank(0) + E.rank(0), C.rank(1) + E.rank(1)), (B,), "C⊕E")
    maps = {}
    if rnd.random() < 0.5:
        for i in (0, 1):
            eye = gr_identity(G, C.rank(i))
            maps[i] = tuple(tuple(row) + tuple(GroupRingElement.zero(G) for _ in range(E.rank(i))) for row in eye)
        return ChainMap(C, D, maps), C, D
    for i in (0, 1):
        eye = gr_identity(G, C.rank(i))
        maps[i] = tuple(eye) + tuple(tuple(GroupRingElement.zero(G) for _ in range(C.rank(i))) for _ in range(E.rank(i)))
    return ChainMap(D, C, maps), D, C


def random_invariant_form(G: FiniteGroup, rank: int, rng: np.random.Generator) -> np.ndarray:
    """G 不変な正定値エルミート行列（ランダムな正定値行列の G 平均）"""
    n = G.order * rank
    Z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    A = Z @ Z.conj().T + n * np.eye(n)
    K = np.zeros((n, n), dtype=complex)
    for g in range(G.order):
        L = np.zeros((n, n))
        for j in range(rank):
            for h in range(G.order):
                L[j * G.order + h, j * G.order + G.mul[g][h]] = 1.0
        K += L @ A @ L.T
    return K / G.order


# 類と指標


def random_cyclotomic(n: int, rnd: random.Random, bound: int = 3) -> CyclotomicNumber:
    """0 でない Q(ζ_n) の元"""
    while True:
        terms = {rnd.randrange(n): Fraction(rnd.randint(-bound, bound), rnd.randint(1, 2)) for _ in range(3)}
        value = CyclotomicNumber.from_exponents(n, terms)
        if not value.is_zero:
            return value


def random_class(table: CharacterTable, rnd: random.Random, primes: Sequence[int] = (2, 3)) -> ArithClassRep:
    size = len(table)
    fin = {p: tuple(random_cyclotomic(table.conductor, rnd) for _ in range(size)) for p in primes if rnd.random() < 0.8}
    arch = tuple(ArchValue(rnd.uniform(0.1, 10.0)) for _ in range(size))
    return ArithClassRep(table, fin, arch)


def random_rational_trivial_class(table: CharacterTable, rnd: random.Random) -> ArithClassRep:
    """自明群上の目に見えて有理な類（r をその素因数全てに置き、無限部分は厳密）"""
    num = rnd.choice((1, 2, 3, 5, 6, 10, 12))
    den = rnd.choice((1, 2, 3, 7))
    r = Fraction(num * rnd.choice((1, -1)), den)
    primes = sorted({p for p in (2, 3, 5, 7) if (r.numerator * r.denominator) % p == 0})
    fin = {p: (CyclotomicNumber.from_rational(r),) for p in primes}
    arch = (ArchValue.of_rational(Fraction(rnd.randint(1, 9), rnd.randint(1, 9))),)
    return ArithClassRep(table, fin, arch)


def random_virtual(size: int, rnd: random.Random, bound: int = 2) -> VirtualCharacter:
    return VirtualCharacter(tuple(rnd.randint(-bound, bound) for _ in range(size)))


def closure(G: FiniteGroup, generators: Sequence[int]) -> List[int]:
    """生成元で閉じた部分集合"""
    elements = {G.identity}
    frontier = [G.identity]
    while frontier:
        x = frontier.pop()
        for s in generators:
            y = G.mul[x][s]
            if y not in elements:
                elements.add(y)
                frontier.append(y)
    return sorted(elements)


def random_subgroup(table: CharacterTable, rnd: random.Random, cache: dict) -> Subgroup:
    G = table.group
    gens = rnd.sample(range(G.order), k=min(G.order, rnd.choice((1, 1, 2))))
    key = tuple(closure(G, gens))
    if key not in cache:
        cache[key] = subgroup(table, key)
    return cache[key]

"""指標表の性質（直交関係、Frobenius 相互律、シンプレクティック指標の偶数性）"""
import logging
from typing import List

from ...domain.entities import CheckResult
from ...domain.errors import NotIrreducible
from ...domain.groupchar import (
    augmentation_character,
    cyclic_subgroup,
    frobenius_schur,
    induce,
    inner_product,
    restrict,
    symplectic_generators,
)
from ..fixtures import random_subgroup, random_virtual, suite_random
from . import PropertyRun, SuiteContext

logger = logging.getLogger(__name__)

SUITE = "groupchar"
RECIPROCITY_SAMPLES = 60


def run(context: SuiteContext) -> List[CheckResult]:
    rnd, _ = suite_random(context.seed, SUITE)
    tables = context.tables()

    # 1. 直交関係と次数の二乗和
    orthogonality = PropertyRun("orthogonality", SUITE, context.seed)
    for name, table in tables:
        size = len(table)
        for i in range(size):
            for j in range(size):
                expected = 1 if i == j else 0
                value = inner_product(table.character(i), table.character(j), table)
                if not orthogonality.record(value == expected, group=name, i=i, j=j, value=value):
                    break
        degree_sum = sum(d * d for d in table.degrees)
        orthogonality.record(degree_sum == table.group.order, group=name, degree_square_sum=degree_sum)

    # 2. Frobenius–Schur 指標は −1, 0, 1
    indicators = PropertyRun("frobenius_schur", SUITE, context.seed)
    for name, table in tables:
        for i, chi in enumerate(table.characters):
            try:
                frobenius_schur(chi, table)
                indicators.record(True, group=name, index=i)
            except NotIrreducible as e:
                indicators.record(False, group=name, index=i, error=str(e))

    # 3. ⟨Ind θ, ψ⟩_G = ⟨θ, ψ|_H⟩_H
    reciprocity = PropertyRun("frobenius_reciprocity", SUITE, context.seed)
    cache = {}
    for _ in range(RECIPROCITY_SAMPLES):
        name, table = rnd.choice(tables)
        H = random_subgroup(table, rnd, cache)
        theta = random_virtual(len(H.table), rnd)
        psi = random_virtual(len(table), rnd)
        left = inner_product(induce(H, theta), psi, table)
        right = inner_product(theta, restrict(psi, H), H.table)
        if not reciprocity.record(
            left == right, group=name, subgroup=list(H.elements), theta=list(theta.coeffs), psi=list(psi.coeffs)
        ):
            break

    # 4. シンプレクティック生成元と u_I の対は偶数
    pairing = PropertyRun("symplectic_pairing_even", SUITE, context.seed)
    for name, table in tables:
        G = table.group
        seen = set()
        for g in range(G.order):
            I = cyclic_subgroup(table, g)
            if I.elements in seen:
                continue
            seen.add(I.elements)
            u = augmentation_character(I)
            for psi in symplectic_generators(table):
                value = inner_product(restrict(psi, I), u, I.table)
                pairing.record(value % 2 == 0, group=name, generator=g, psi=psi.label(), pairing=value)

    logger.info(f"{SUITE}: {len(tables)} 個の群で検査しました")
    return [orthogonality.result(), indicators.result(), reciprocity.result(), pairing.result()]

"""順分岐体のレゾルベント、符号、Pfaffian、Gauss 和の性質"""
import logging
from typing import List

from sympy import isprime

from ...domain.classrep import theta_rational
from ...domain.cycloarith import ComplexInterval, embed
from ...domain.entities import CheckResult
from ...domain.grouprings import GroupRingElement
from ...domain.tamefield import (
    exact_resolvent,
    galois_action_check,
    galois_action_identity,
    gauss_magnitude_check,
    gauss_reciprocity_holds,
    normalized_ring_class,
    resolvent_sign_check,
    ring_class_representative,
    tame_gauss_sum,
    torsion_quotient_check,
    vector_resolvent,
)
from ..fixtures import suite_random
from . import PropertyRun, SuiteContext

logger = logging.getLogger(__name__)

SUITE = "tamefield"
GAUSS_FIELDS = ((5, 5), (7, 7), (13, 13), (5, 25))
SYNTHETIC_VECTORS = 5


def run(context: SuiteContext) -> List[CheckResult]:
    rnd, rng = suite_random(context.seed, SUITE)
    tol = context.tolerance
    fields = context.fields()

    signs = PropertyRun("resolvent_sign", SUITE, context.seed)
    magnitude = PropertyRun("pfaffian_magnitude", SUITE, context.seed)
    action = PropertyRun("galois_action", SUITE, context.seed)
    consistent = PropertyRun("exact_embedding_consistent", SUITE, context.seed)
    end_to_end = PropertyRun("normalized_class_matches", SUITE, context.seed)
    torsion = PropertyRun("torsion_quotient", SUITE, context.seed)

    for name, F in fields:
        G = F.group
        # 1. sign N(b|ψ) = ε̃_∞(ψ)
        for check in resolvent_sign_check(F):
            signs.record(check.holds, field=name, psi=check.label, sign=check.resolvent_sign, eps=check.eps)

        # 2. |Pf| と導手、整数正規基底なら |N(b|ψ)| = |Pf(ψ)|
        for check in gauss_magnitude_check(F):
            magnitude.record(check.holds, field=name, psi=check.label, pfaffian=str(check.pfaffian))

        # 3. (g(b)|χ) = (b|χ)·det χ(g)
        for i in range(len(F.table)):
            for g in range(G.order):
                ok, residual = galois_action_check(F, i, g)
                action.record(ok, field=name, index=i, g=g, residual=residual)

        if F.exact is None:
            continue
        # 4. 厳密値と区間の埋め込みが一致する
        for i in range(len(F.table)):
            ok = embed(exact_resolvent(F, i)).overlaps(vector_resolvent(F.table, i, F.embeddings))
            consistent.record(ok, field=name, index=i)

        if not F.integral_normal_basis:
            continue
        # 5. 正規化した整数環の類と Pfaffian からの代表元の θ が絶対値で一致する
        left = theta_rational(normalized_ring_class(F, tol).tilde())
        right = theta_rational(ring_class_representative(F).tilde())
        for psi, x, y in zip(left.generators, left.values, right.values):
            end_to_end.record(abs(x) == abs(y), field=name, psi=psi.label(), normalized=str(x), pfaffian=str(y))

        # 6. 𝔞 = O_N, p·O_N, (1+N)·b（O_N/𝔞 は位数 |G|+1 の自明加群）
        p = G.order + 1
        if isprime(p):
            norm_element = GroupRingElement.from_dict(G, {g: 1 for g in range(G.order)})
            for alpha in (GroupRingElement.one(G), GroupRingElement.scalar(G, p), norm_element + GroupRingElement.one(G)):
                check = torsion_quotient_check(F, alpha, p, tol)
                torsion.record(check.holds, field=name, p=p, alpha=str(alpha.to_dict()))

    # 7. 任意のベクトルでも Galois 作用の式が成り立つ
    synthetic = PropertyRun("galois_action_synthetic", SUITE, context.seed)
    for name, table in context.tables():
        G = table.group
        for _ in range(SYNTHETIC_VECTORS):
            E = [ComplexInterval.from_complex(complex(*rng.normal(size=2))) for _ in range(G.order)]
            i, g = rnd.randrange(len(table)), rnd.randrange(G.order)
            ok, residual = galois_action_identity(table, i, g, E)
            if not synthetic.record(ok, group=name, index=i, g=g, residual=residual):
                break

    # 8. 順 Gauss 和 |τ|² = q と τ(χ)τ(χ̄) = χ(−1)q
    gauss_magnitude = PropertyRun("gauss_sum_magnitude", SUITE, context.seed)
    reciprocity = PropertyRun("gauss_sum_reciprocity", SUITE, context.seed)
    triples = 0
    for p, q in GAUSS_FIELDS:
        e = q - 1
        for k in range(1, e):
            if triples >= context.limits.reciprocity_triples:
                break
            triples += 1
            gauss_magnitude.record(tame_gauss_sum(p, q, e, k).magnitude_holds(), p=p, q=q, e=e, k=k)
            reciprocity.record(gauss_reciprocity_holds(p, q, e, k), p=p, q=q, e=e, k=k)

    logger.info(f"{SUITE}: {len(fields)} 個の体と {triples} 個の Gauss 和を検査しました")
    return [
        r.result()
        for r in (signs, magnitude, action, consistent, end_to_end, torsion, synthetic, gauss_magnitude, reciprocity)
    ]

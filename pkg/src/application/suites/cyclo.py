"""円分数の演算、Galois 作用、証明付き埋め込みの整合性"""
import logging
from typing import List

from ...domain.cycloarith import GaloisElement, conjugate, embed, galois_apply, galois_group, norm_to_Q, units_mod
from ...domain.entities import CheckResult
from ..fixtures import random_cyclotomic, suite_random
from . import PropertyRun, SuiteContext

logger = logging.getLogger(__name__)

SUITE = "cyclo"
CONDUCTORS = (3, 4, 5, 7, 8, 12)


def run(context: SuiteContext) -> List[CheckResult]:
    rnd, _ = suite_random(context.seed, SUITE)
    embedding = PropertyRun("embedding_encloses", SUITE, context.seed)
    homomorphism = PropertyRun("galois_homomorphism", SUITE, context.seed)
    norm = PropertyRun("norm_product_of_conjugates", SUITE, context.seed)
    involution = PropertyRun("conjugation_involution", SUITE, context.seed)
    multiplicative = PropertyRun("norm_multiplicative", SUITE, context.seed)
    checks = [embedding, homomorphism, norm, involution, multiplicative]

    for sample in range(context.limits.cyclo_pairs):
        n = CONDUCTORS[sample % len(CONDUCTORS)]
        a, b = random_cyclotomic(n, rnd), random_cyclotomic(n, rnd)
        case = {"n": n, "a": str(a), "b": str(b)}

        if not embedding.failed:
            ok = embed(a + b).overlaps(embed(a) + embed(b)) and embed(a * b).overlaps(embed(a) * embed(b))
            embedding.record(ok, **case)

        if not homomorphism.failed:
            omega = GaloisElement(n, rnd.choice(units_mod(n)))
            ok = galois_apply(omega, a * b) == galois_apply(omega, a) * galois_apply(omega, b)
            ok = ok and galois_apply(omega, a + b) == galois_apply(omega, a) + galois_apply(omega, b)
            homomorphism.record(ok, k=omega.k, **case)

        if not norm.failed:
            product = a
            for omega in galois_group(n):
                if omega.k != 1:
                    product = product * galois_apply(omega, a)
            norm.record(product.is_rational and product.to_rational() == norm_to_Q(a), **case)

        if not involution.failed:
            involution.record(conjugate(conjugate(a)) == a, **case)

        if not multiplicative.failed:
            multiplicative.record(norm_to_Q(a * b) == norm_to_Q(a) * norm_to_Q(b), **case)

        if all(c.failed for c in checks):
            break

    logger.info(f"{SUITE}: {context.limits.cyclo_pairs} 組で検査しました")
    return [c.result() for c in checks]

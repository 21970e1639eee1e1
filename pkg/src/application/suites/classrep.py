"""類の代表元の群演算、tilde、Det、Pfaffian、自明群の次数写像"""
import logging
from typing import List

from ...domain.classrep import (
    ArithClassRep,
    degree_map_trivialG,
    det_of_unit,
    is_galois_equivariant,
    pfaffian_p,
    restrict_symplectic,
    square_rationality,
    theta_rational,
    tilde,
)
from ...domain.entities import CheckResult
from ...domain.groupchar import VirtualCharacter, cyclic_subgroup, symplectic_generators
from ..fixtures import random_class, random_rational_trivial_class, random_unimodular, suite_random
from . import PropertyRun, SuiteContext

logger = logging.getLogger(__name__)

SUITE = "classrep"
SAMPLES = 40
PFAFFIAN_PRIMES = (2, 3, 5, 7)


def run(context: SuiteContext) -> List[CheckResult]:
    rnd, _ = suite_random(context.seed, SUITE)
    tol = context.tolerance
    tables = context.tables()
    trivial = context.repository.load_group("trivial")

    axioms = PropertyRun("group_axioms", SUITE, context.seed)
    tilde_hom = PropertyRun("tilde_homomorphism", SUITE, context.seed)
    equivariant = PropertyRun("det_galois_equivariant", SUITE, context.seed)
    additive = PropertyRun("pfaffian_additive", SUITE, context.seed)
    gamma_hom = PropertyRun("degree_map_homomorphism", SUITE, context.seed)
    theta_square = PropertyRun("theta_of_restriction_is_gamma_squared", SUITE, context.seed)

    for sample in range(SAMPLES):
        name, table = rnd.choice(tables)
        G = table.group

        # 1. 結合律・単位元・逆元
        if not axioms.failed:
            a, b, c = (random_class(table, rnd) for _ in range(3))
            identity = ArithClassRep.identity(table)
            ok = ((a * b) * c).equals(a * (b * c), tol)
            ok = ok and (a * identity).equals(a, tol)
            ok = ok and (a * a.inverse()).equals(identity, tol)
            axioms.record(ok, group=name, sample=sample)

        # 2. tilde は準同型
        if not tilde_hom.failed:
            a, b = random_class(table, rnd), random_class(table, rnd)
            tilde_hom.record(tilde(a * b).equals(tilde(a) * tilde(b), tol), group=name, sample=sample)

        # 3. 単数の Det は Galois 同変
        if not equivariant.failed:
            size = rnd.choice((1, 2))
            x = random_unimodular(G, size, rnd)
            equivariant.record(is_galois_equivariant(det_of_unit(x, table), table), group=name, size=size)

        # 4. Pf_p(ψ₁ + ψ₂) = Pf_p(ψ₁)·Pf_p(ψ₂)
        if not additive.failed:
            gens = symplectic_generators(table)
            psi1 = _random_symplectic(gens, len(table), rnd)
            psi2 = _random_symplectic(gens, len(table), rnd)
            I = cyclic_subgroup(table, rnd.randrange(G.order))
            p = rnd.choice(PFAFFIAN_PRIMES)
            left = pfaffian_p(p, table, I, psi1 + psi2)
            right = pfaffian_p(p, table, I, psi1) * pfaffian_p(p, table, I, psi2)
            additive.record(
                left == right, group=name, p=p, inertia=list(I.elements),
                psi1=list(psi1.coeffs), psi2=list(psi2.coeffs),
            )

        # 5. 自明群での γ と θ
        e1, e2 = random_rational_trivial_class(trivial, rnd), random_rational_trivial_class(trivial, rnd)
        case = {"fin1": {p: str(v[0]) for p, v in e1.fin.items()}, "fin2": {p: str(v[0]) for p, v in e2.fin.items()}}
        if not gamma_hom.failed:
            product = degree_map_trivialG(e1 * e2)
            gamma_hom.record(product.close_to(degree_map_trivialG(e1) * degree_map_trivialG(e2), tol), **case)
        if not theta_square.failed:
            theta = theta_rational(restrict_symplectic(e1))
            two = VirtualCharacter.basis(1, 0, 2)
            theta_square.record(theta.value(two) == square_rationality(e1), theta=str(theta.value(two)), **case)

    logger.info(f"{SUITE}: {SAMPLES} 標本で検査しました")
    return [r.result() for r in (axioms, tilde_hom, equivariant, additive, gamma_hom, theta_square)]


def _random_symplectic(gens, size: int, rnd) -> VirtualCharacter:
    psi = VirtualCharacter.zero(size)
    for g in gens:
        psi = psi + g * rnd.randint(-2, 2)
    return psi

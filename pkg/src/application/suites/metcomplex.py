"""計量付き複体の算術類の性質

基底・W の取り方に依らないこと、擬同型での不変性、直和での乗法性、
非輪状複体と計量の定数倍、固定点複体、等長性、Smith 標準形との一致。
"""
import logging
from typing import List

from ...domain.classrep import ArchValue, ArithClassRep, det_of_unit, one_G_coordinate, same_class, tilde
from ...domain.cycloarith import CyclotomicNumber
from ...domain.entities import CheckResult
from ...domain.grouprings import gr_matrix
from ...domain.metcomplex import (
    PerfectComplex,
    W_bases,
    acyclic_metrics,
    arithmetic_class,
    direct_sum,
    fixed_point_identity_check,
    hermitian_to_metrised,
    isometry_self_test,
    km_isomorphism,
    quasi_iso_transport,
    rescale_metrics,
    rotated_W_basis,
    smith_oracle,
)
from ..fixtures import (
    acyclic_complex,
    quasi_iso_pair,
    random_invariant_form,
    random_rational_invertible,
    random_two_term_complex,
    random_unimodular,
    suite_random,
)
from . import PropertyRun, SuiteContext

logger = logging.getLogger(__name__)

SUITE = "metcomplex"
SAMPLES = 30
LOCAL_PRIMES = (2, 3, 5)


def run(context: SuiteContext) -> List[CheckResult]:
    rnd, rng = suite_random(context.seed, SUITE)
    tol = context.tolerance
    limits = context.limits
    tables = context.tables()
    trivial = context.repository.load_group("trivial")
    results = []

    # 1. Z_p[G] 基底の取り替え
    p_basis = PropertyRun("p_basis_independence", SUITE, context.seed)
    # 2. Q[G] 基底の取り替え
    q_basis = PropertyRun("q_basis_independence", SUITE, context.seed)
    # 3. W の正規直交基底の取り替え
    w_basis = PropertyRun("W_basis_independence", SUITE, context.seed)
    for name, table in tables:
        G = table.group
        for sample in range(limits.basis_perturbations):
            if p_basis.failed and q_basis.failed and w_basis.failed:
                break
            P = random_two_term_complex(G, rnd)
            M = hermitian_to_metrised(P, table)
            case = {"group": name, "boundary": _boundary_dict(P)}

            if not p_basis.failed:
                p = rnd.choice(LOCAL_PRIMES)
                U = {i: random_unimodular(G, P.rank(i), rnd, p) for i in P.degrees}
                a = arithmetic_class(M, primes=[p])
                b = arithmetic_class(M, p_bases={p: U}, primes=[p])
                expected = _alternating_det(U, P, table, sign=-1)
                ok = same_class(a, b, tol) and _ratio_matches(b / a, expected, [p], tol, unit=True)
                p_basis.record(ok, p=p, **case)

            if not q_basis.failed:
                eta = {i: random_rational_invertible(G, P.rank(i), rnd) for i in P.degrees}
                b = arithmetic_class(M, q_bases=eta)
                a = arithmetic_class(M, primes=b.support)
                expected = _alternating_det(eta, P, table, sign=1)
                ok = same_class(a, b, tol) and _ratio_matches(b / a, expected, b.support, tol)
                ok = ok and one_G_coordinate(a)[0] == {} and one_G_coordinate(b)[0] == {p: expected[0] for p in b.fin}
                q_basis.record(ok, **case)

            if not w_basis.failed:
                rotated = tuple(rotated_W_basis(W, rng) for W in M.W)
                a = arithmetic_class(M)
                b = arithmetic_class(hermitian_to_metrised(P, table, W=rotated))
                w_basis.record(a.equals(b, tol), **case)
    results += [p_basis.result(), q_basis.result(), w_basis.result()]

    # 4. 擬同型で運んだ計量の類は同じ
    quasi = PropertyRun("quasi_iso_invariance", SUITE, context.seed)
    for sample in range(limits.quasi_iso_pairs):
        name, table = tables[sample % len(tables)]
        alpha, source, target = quasi_iso_pair(table.group, rnd)
        N = hermitian_to_metrised(target, table)
        a = arithmetic_class(quasi_iso_transport(alpha, N), primes=LOCAL_PRIMES)
        b = arithmetic_class(N, primes=LOCAL_PRIMES)
        ok = a.fin == b.fin and one_G_coordinate(a)[0] == one_G_coordinate(b)[0]
        ok = ok and same_class(a, b, tol) and one_G_coordinate(a)[1].close_to(one_G_coordinate(b)[1], tol)
        if not quasi.record(ok, group=name, source=_boundary_dict(source), target=_boundary_dict(target)):
            break
    results.append(quasi.result())

    # 5. 直和・非輪状・定数倍・固定点
    additive = PropertyRun("direct_sum_multiplicative", SUITE, context.seed)
    acyclic = PropertyRun("acyclic_is_identity", SUITE, context.seed)
    rescale = PropertyRun("rescale_law", SUITE, context.seed)
    fixed = PropertyRun("fixed_point_identity", SUITE, context.seed)
    uniform = PropertyRun("uniform_rescale_tilde_invariant", SUITE, context.seed)
    for sample in range(SAMPLES):
        name, table = rnd.choice(tables)
        G = table.group
        P1, P2 = random_two_term_complex(G, rnd, name="P"), random_two_term_complex(G, rnd, name="Q")
        M1, M2 = hermitian_to_metrised(P1, table), hermitian_to_metrised(P2, table)
        case = {"group": name, "P": _boundary_dict(P1), "Q": _boundary_dict(P2)}

        if not additive.failed:
            whole = arithmetic_class(direct_sum(M1, M2))
            additive.record(whole.equals(arithmetic_class(M1) * arithmetic_class(M2), tol), **case)

        if not acyclic.failed:
            E = acyclic_complex(G, rnd, rank=rnd.choice((1, 2)))
            value = arithmetic_class(acyclic_metrics(E, table))
            acyclic.record(value.equals(ArithClassRep.identity(table), tol), group=name, boundary=_boundary_dict(E))

        if not rescale.failed:
            factors = [rnd.uniform(0.5, 3.0) for _ in range(len(table))]
            ratio = arithmetic_class(rescale_metrics(M1, factors)) / arithmetic_class(M1)
            ok = not ratio.fin and all(abs(ratio.arch[i].value - factors[i]) <= tol * 10 * factors[i] for i in range(len(table)))
            rescale.record(ok, factors=factors, **case)

        if not uniform.failed:
            c = rnd.uniform(0.5, 2.0)
            scaled = rescale_metrics(M1, [c ** d for d in table.degrees])
            uniform.record(tilde(arithmetic_class(scaled)).equals(tilde(arithmetic_class(M1)), tol), c=c, **case)

        if not fixed.failed:
            ok, f, h = fixed_point_identity_check(M1, trivial, tol)
            fixed.record(ok, f_arch=f.arch[0].value, h_arch=h.arch[0].value, **case)
    results += [additive.result(), acyclic.result(), rescale.result(), uniform.result(), fixed.result()]

    # 6. G 不変形式に対する等長性
    isometry = PropertyRun("isometry", SUITE, context.seed)
    for sample in range(limits.isometry_vectors):
        name, table = rnd.choice(tables)
        G = table.group
        P = random_two_term_complex(G, rnd)
        i = rnd.choice(list(P.degrees))
        form = random_invariant_form(G, P.rank(i), rng)
        n = G.order * P.rank(i)
        x = rng.normal(size=n) + 1j * rng.normal(size=n)
        check = isometry_self_test(P, i, form, x)
        if not isometry.record(check.passed(tol * 100), group=name, degree=i, norm=check.norm, tensor_norm=check.tensor_norm):
            break
    results.append(isometry.result())

    # 7. 自明群上では |ξ の係数| が Smith 標準形の行列式
    smith = PropertyRun("smith_normal_form", SUITE, context.seed)
    W = W_bases(trivial)[0]
    T = trivial.group
    for sample in range(SAMPLES):
        d = rnd.choice((1, 2, 3))
        rows = [[rnd.randint(-4, 4) for _ in range(d)] for _ in range(d)]
        P = PerfectComplex(T, 0, (d, d), (gr_matrix(T, rows),), "smith")
        expected = smith_oracle(P)
        if expected == 0:
            continue
        value = abs(km_isomorphism(P, 0, W).scale)
        if not smith.record(abs(value - expected) <= tol * 100 * expected, boundary=rows, scale=value, smith=expected):
            break
    results.append(smith.result())

    logger.info(f"{SUITE}: {len(results)} 個の性質を検査しました")
    return results


def _boundary_dict(P: PerfectComplex):
    """再現用の境界（群環元は {要素: 係数}）"""
    return [
        [[{str(g): str(c) for g, c in e.to_dict().items()} for e in row] for row in B]
        for B in P.boundaries
    ]


def _alternating_det(bases, P: PerfectComplex, table, sign: int) -> List[CyclotomicNumber]:
    """∏_i Det(X^i)(φ)^{sign·(−1)^i}"""
    values = [CyclotomicNumber.one() for _ in range(len(table))]
    for i in P.degrees:
        if not P.rank(i):
            continue
        dets = det_of_unit(bases[i], table)
        inverted = (sign < 0) == (i % 2 == 0)
        values = [v * (x.inverse() if inverted else x) for v, x in zip(values, dets)]
    return values


def _ratio_matches(ratio: ArithClassRep, expected, primes, tol: float, unit: bool = False) -> bool:
    """有限部分は素数ごとに厳密に expected、無限部分は |expected|（unit なら 1）"""
    for phi, value in enumerate(expected):
        if any(ratio.fin_value(p, phi) != value for p in primes):
            return False
        target = ArchValue.one() if unit else ArchValue(abs(complex(value)))
        if not ratio.arch[phi].close_to(target, tol):
            return False
    return True

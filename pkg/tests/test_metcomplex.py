import random

import numpy as np
import pytest

from src.application.fixtures import random_rational_invertible, random_two_term_complex
from src.domain.classrep import ArchValue, ArithClassRep, det_of_unit
from src.domain.errors import DescriptorError, GroupMismatch, NotABasis, NotQuasiIso
from src.domain.grouprings import gr_identity, gr_matrix
from src.domain.metcomplex import (
    ChainMap,
    HermitianFormSpec,
    PerfectComplex,
    W_bases,
    acyclic_metrics,
    arithmetic_class,
    cohomology_dimensions,
    direct_sum,
    fixed_point_identity_check,
    hermitian_to_metrised,
    isometry_self_test,
    isotypic_basis,
    km_isomorphism,
    orthonormal_W_basis,
    quasi_iso_transport,
    rescale_metrics,
    rotated_W_basis,
    smith_oracle,
    standard_forms,
    validate_forms,
)


@pytest.fixture(scope="module")
def complexes(corpus):
    return {cid: corpus.load_complex(cid) for cid in ("acyclic_s3", "rescale_s3", "two_term_c2", "two_term_trivial")}


def _metrised(descriptor):
    return hermitian_to_metrised(descriptor.complex, descriptor.table, descriptor.forms)


def test_standard_forms(tables):
    G = tables["s3"].group
    mu, nu = standard_forms(G)
    assert mu[0, 0] == 1
    assert mu[0, 1] == 0
    assert nu[2, 2] == G.order


def test_W_basis_sizes(tables, trivial_table):
    assert orthonormal_W_basis(trivial_table.group, trivial_table.irreps[0]).shape == (1, 1)
    c2 = tables["c2"]
    assert orthonormal_W_basis(c2.group, c2.irreps[1]).shape == (1, 2)
    q8 = tables["q8"]
    W = orthonormal_W_basis(q8.group, q8.irreps[4])
    assert W.shape == (4, 8)
    _, nu = standard_forms(q8.group)
    assert np.allclose(W @ nu @ W.conj().T, np.eye(4))


def test_isotypic_dimension(complexes):
    descriptor = complexes["acyclic_s3"]
    P, table = descriptor.complex, descriptor.table
    W = W_bases(table)
    for phi, degree in enumerate(table.degrees):
        assert isotypic_basis(P, 0, phi, W[phi]).dimension == P.rank(0) * degree ** 2


def test_boundary_sizes_are_checked(trivial_table):
    T = trivial_table.group
    with pytest.raises(NotABasis):
        PerfectComplex(T, 0, (1, 2), (gr_matrix(T, [[1]]),), "bad")


def test_boundary_must_square_to_zero(trivial_table):
    T = trivial_table.group
    one = gr_matrix(T, [[1]])
    with pytest.raises(DescriptorError):
        PerfectComplex(T, 0, (1, 1, 1), (one, one), "not-a-complex")


def test_km_scale_over_trivial_group(trivial_table):
    T = trivial_table.group
    P = PerfectComplex(T, 0, (1, 1), (gr_matrix(T, [[2]]),), "times-two")
    W = W_bases(trivial_table)[0]
    km = km_isomorphism(P, 0, W)
    assert abs(km.scale) == pytest.approx(2.0)
    assert km.cohomology_dimensions == {0: 0, 1: 0}
    assert smith_oracle(P) == 2


def test_km_scale_matches_smith_normal_form(complexes):
    descriptor = complexes["two_term_trivial"]
    P = descriptor.complex
    W = W_bases(descriptor.table)[0]
    assert smith_oracle(P) == 6
    assert abs(km_isomorphism(P, 0, W).scale) == pytest.approx(6.0)


def test_smith_oracle_requires_trivial_group(complexes):
    with pytest.raises(GroupMismatch):
        smith_oracle(complexes["two_term_c2"].complex)


def test_cohomology_of_norm_complex(complexes):
    descriptor = complexes["two_term_c2"]
    P, table = descriptor.complex, descriptor.table
    W = W_bases(table)
    # N = 1+g は自明成分で 2 倍、符号成分で 0
    assert cohomology_dimensions(P, 0, W[0]) == {0: 0, 1: 0}
    assert cohomology_dimensions(P, 1, W[1]) == {0: 1, 1: 1}


def test_acyclic_class_is_identity(complexes):
    descriptor = complexes["acyclic_s3"]
    M = acyclic_metrics(descriptor.complex, descriptor.table)
    assert arithmetic_class(M).equals(ArithClassRep.identity(descriptor.table))


def test_acyclic_metrics_need_vanishing_cohomology(complexes):
    descriptor = complexes["two_term_c2"]
    with pytest.raises(NotQuasiIso):
        acyclic_metrics(descriptor.complex, descriptor.table)


def test_rescale_law(complexes):
    descriptor = complexes["rescale_s3"]
    M = _metrised(descriptor)
    ratio = arithmetic_class(rescale_metrics(M, descriptor.rescale)) / arithmetic_class(M)
    assert ratio.fin == {}
    assert [a.value for a in ratio.arch] == pytest.approx(descriptor.rescale)


def test_direct_sum_is_multiplicative(complexes):
    M1 = _metrised(complexes["rescale_s3"])
    M2 = acyclic_metrics(complexes["acyclic_s3"].complex, complexes["acyclic_s3"].table)
    whole = arithmetic_class(direct_sum(M1, M2))
    assert whole.equals(arithmetic_class(M1) * arithmetic_class(M2))


def test_q_basis_enters_finite_part(complexes):
    descriptor = complexes["two_term_c2"]
    M = _metrised(descriptor)
    value = arithmetic_class(M, descriptor.q_bases, primes=descriptor.primes)
    # 2+g の指標値は (3, 1)
    assert value.support == (2, 3)
    assert value.fin[3] == (3, 1)


def test_bases_must_be_invertible(complexes):
    descriptor = complexes["two_term_c2"]
    G = descriptor.table.group
    M = _metrised(descriptor)
    with pytest.raises(NotABasis):
        arithmetic_class(M, {0: gr_identity(G, 2)})
    with pytest.raises(NotABasis):
        arithmetic_class(M, {0: gr_matrix(G, [[{0: 1, 1: 1}]])})
    with pytest.raises(NotABasis):
        arithmetic_class(M, p_bases={3: {0: gr_matrix(G, [[3]])}}, primes=[3])


def test_W_basis_independence(complexes):
    descriptor = complexes["rescale_s3"]
    M = _metrised(descriptor)
    rng = np.random.default_rng(7)
    rotated = tuple(rotated_W_basis(W, rng) for W in M.W)
    other = hermitian_to_metrised(descriptor.complex, descriptor.table, descriptor.forms, W=rotated)
    assert arithmetic_class(other).equals(arithmetic_class(M))


def test_identity_transport(complexes):
    descriptor = complexes["two_term_c2"]
    P = descriptor.complex
    G = P.group
    N = _metrised(descriptor)
    alpha = ChainMap(P, P, {i: gr_identity(G, P.rank(i)) for i in P.degrees})
    assert arithmetic_class(quasi_iso_transport(alpha, N)).equals(arithmetic_class(N))


def test_chain_map_must_commute(complexes):
    P = complexes["two_term_c2"].complex
    G = P.group
    with pytest.raises(NotQuasiIso):
        ChainMap(P, P, {0: gr_identity(G, 1), 1: gr_matrix(G, [[2]])})


def test_fixed_point_identity(complexes, trivial_table):
    for cid in ("two_term_c2", "two_term_trivial"):
        ok, f, h = fixed_point_identity_check(_metrised(complexes[cid]), trivial_table)
        assert ok, (cid, f.arch[0].value, h.arch[0].value)


def test_forms_must_be_invariant(complexes):
    descriptor = complexes["two_term_c2"]
    P = descriptor.complex
    skewed = np.diag([1.0, 2.0]).astype(complex)
    forms = HermitianFormSpec({0: skewed, 1: np.eye(2, dtype=complex)})
    assert validate_forms(P, forms)
    with pytest.raises(DescriptorError):
        hermitian_to_metrised(P, descriptor.table, forms)


def test_isometry(complexes):
    P = complexes["acyclic_s3"].complex
    n = P.group.order * P.rank(0)
    rng = np.random.default_rng(11)
    x = rng.normal(size=n) + 1j * rng.normal(size=n)
    check = isometry_self_test(P, 0, 3.0 * np.eye(n, dtype=complex), x)
    assert check.passed(1e-9)


def test_q_basis_ratio_is_exact_on_q8(tables):
    table = tables["q8"]
    G = table.group
    rnd = random.Random(11)
    P = random_two_term_complex(G, rnd)
    M = hermitian_to_metrised(P, table)
    eta = {i: random_rational_invertible(G, P.rank(i), rnd) for i in P.degrees}
    b = arithmetic_class(M, q_bases=eta)
    ratio = b / arithmetic_class(M, primes=b.support)
    det0, det1 = det_of_unit(eta[0], table), det_of_unit(eta[1], table)
    for phi, (x, y) in enumerate(zip(det0, det1)):
        expected = x * y.inverse()
        assert all(ratio.fin_value(p, phi) == expected for p in b.support)
        assert ratio.arch[phi].close_to(ArchValue(abs(complex(expected))), 1e-9)

"""自由 Z[G] 加群の計量付き複体と算術類

等長写像 α: (P⊗W)^G ≅ W̄P により、同型成分の計算は全て C[G]^d の中で行う。
r(a)(1⊗w) の像は |G|·w̄·a。境界行列 B^i は d_{i+1}×d_i で ∂(e_j) = Σ_k B[k][j] e_k。
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from sympy import ZZ, Matrix
from sympy.matrices.normalforms import smith_normal_form

from .classrep import ArchValue, ArithClassRep, det_of_unit
from .cycloarith import CyclotomicNumber
from .errors import (
    DescriptorError,
    GroupMismatch,
    NotABasis,
    NotQuasiIso,
    PrecisionInsufficient,
    RankDeficiency,
)
from .groupchar import CharacterTable, FiniteGroup, IrreducibleRep
from .grouprings import (
    GroupRingElement,
    GroupRingMatrix,
    augment_matrix,
    bad_primes,
    gr_direct_sum,
    gr_identity,
    gr_is_zero,
    gr_matrix,
    gr_multiply,
    gr_transpose,
    is_invertible_over_Q,
    is_invertible_over_Zp,
    regular_matrix,
)

logger = logging.getLogger(__name__)

ZERO_SINGULAR = 1e-10
NONZERO_SINGULAR = 1e-6
ORTHONORMAL_TOL = 1e-10


# 複体


@dataclass(frozen=True)
class PerfectComplex:
    """次数 low, low+1, ... の自由 Z[G] 加群の有界複体

    boundaries[t] は次数 low+t から low+t+1 への境界（d_{t+1}×d_t の群環行列）。
    """
    group: FiniteGroup = field(compare=False, repr=False, hash=False)
    low: int
    ranks: Tuple[int, ...]
    boundaries: Tuple[GroupRingMatrix, ...]
    name: str = ""

    def __post_init__(self):
        source = self.name or "complex"
        if len(self.boundaries) != max(len(self.ranks) - 1, 0):
            raise NotABasis(f"{source}: 境界の数 {len(self.boundaries)} が次数の数と合いません")
        for t, B in enumerate(self.boundaries):
            rows, cols = self.ranks[t + 1], self.ranks[t]
            if len(B) != rows or any(len(row) != cols for row in B):
                raise NotABasis(
                    f"{source}: 次数 {self.low + t} の境界のサイズが {rows}×{cols} ではありません"
                )
        problems = []
        for t in range(len(self.boundaries) - 1):
            if not gr_is_zero(gr_multiply(self.group, self.differential(self.low + t), self.differential(self.low + t + 1))):
                problems.append(f"次数 {self.low + t} で ∂∘∂ ≠ 0 です")
        if problems:
            raise DescriptorError(source, problems)

    @property
    def degrees(self) -> range:
        return range(self.low, self.low + len(self.ranks))

    @property
    def high(self) -> int:
        return self.low + len(self.ranks) - 1

    def rank(self, i: int) -> int:
        if i in self.degrees:
            return self.ranks[i - self.low]
        return 0

    def boundary(self, i: int) -> GroupRingMatrix:
        """次数 i から i+1 への境界（d_{i+1}×d_i）"""
        if self.low <= i < self.high:
            return self.boundaries[i - self.low]
        return tuple(tuple() for _ in range(self.rank(i + 1)))

    def differential(self, i: int) -> GroupRingMatrix:
        """行ベクトルに右から作用する境界 x ↦ x·Bᵀ（d_i×d_{i+1}）"""
        B = self.boundary(i)
        if self.rank(i) == 0 or self.rank(i + 1) == 0:
            return tuple(tuple(GroupRingElement.zero(self.group) for _ in range(self.rank(i + 1))) for _ in range(self.rank(i)))
        return gr_transpose(B)


# 標準形式と W の正規直交基底


def standard_forms(G: FiniteGroup) -> Tuple[np.ndarray, np.ndarray]:
    """(μ, ν)。μ(x, y) = Σ x_g ȳ_g、ν = |G|·μ"""
    mu = np.eye(G.order, dtype=complex)
    return mu, G.order * mu


def hermitian_value(form: np.ndarray, x: np.ndarray, y: np.ndarray) -> complex:
    """k(x, y) = x K y†"""
    return complex(x @ form @ np.conj(y))


def _rep_matrix_complex(rep: IrreducibleRep, g: int) -> np.ndarray:
    return np.array([[complex(v) for v in row] for row in rep.matrices[g]], dtype=complex)


def orthonormal_W_basis(G: FiniteGroup, rep: IrreducibleRep, phi_degree: Optional[int] = None) -> np.ndarray:
    """W_φ の ν に関する正規直交基底（行ベクトル φ(1)² 本）

    行列係数 Σ_g T(g)_{ab} g に Gram–Schmidt を施す。
    """
    dim = rep.dim if phi_degree is None else phi_degree
    mats = [_rep_matrix_complex(rep, g) for g in range(G.order)]
    raw = [np.array([mats[g][a, b] for g in range(G.order)]) for a in range(dim) for b in range(dim)]
    _, nu = standard_forms(G)
    basis = []
    for v in raw:
        w = v.astype(complex)
        for _ in range(2):
            for u in basis:
                w = w - hermitian_value(nu, w, u) * u
        norm_sq = hermitian_value(nu, w, w).real
        if norm_sq > ORTHONORMAL_TOL:
            basis.append(w / np.sqrt(norm_sq))
    if len(basis) != dim * dim:
        raise PrecisionInsufficient(f"W_φ の基底が {len(basis)} 本しか得られません（期待値 {dim * dim}）")
    W = np.array(basis)
    gram = W @ nu @ W.conj().T
    if not np.allclose(gram, np.eye(len(basis)), atol=ORTHONORMAL_TOL):
        raise PrecisionInsufficient("W_φ の基底が正規直交になりません")
    return W


def bar(G: FiniteGroup, w: np.ndarray) -> np.ndarray:
    """Σ w_g g ↦ Σ conj(w_g) g⁻¹"""
    out = np.zeros(G.order, dtype=complex)
    for g in range(G.order):
        out[G.inv[g]] = np.conj(w[g])
    return out


def left_multiply(G: FiniteGroup, y: np.ndarray, x: np.ndarray) -> np.ndarray:
    """C[G] の積 y·x"""
    out = np.zeros(G.order, dtype=complex)
    for h in range(G.order):
        if y[h] == 0:
            continue
        row = G.mul[h]
        for g in range(G.order):
            out[row[g]] += y[h] * x[g]
    return out


def _element_vector(e: GroupRingElement) -> np.ndarray:
    return np.array([float(c) for c in e.coeffs], dtype=complex)


def _regular_complex(G: FiniteGroup, m: GroupRingMatrix) -> np.ndarray:
    rows = len(m)
    cols = len(m[0]) if m else 0
    if rows == 0 or cols == 0:
        return np.zeros((rows * G.order, cols * G.order), dtype=complex)
    return np.array([[float(c) for c in row] for row in regular_matrix(G, m)], dtype=complex)


# 同型成分


@dataclass(frozen=True, eq=False)
class IsotypicSpace:
    """(P^i ⊗ W_φ)^G を W̄_φP^i ⊂ C[G]^{d_i} で表した基底（行ベクトル）"""
    phi: int
    degree: int
    vectors: np.ndarray

    @property
    def dimension(self) -> int:
        return self.vectors.shape[0]


def isotypic_basis(
    P: PerfectComplex,
    i: int,
    phi: int,
    W: np.ndarray,
    q_basis: Optional[GroupRingMatrix] = None,
) -> IsotypicSpace:
    """基底 {|G|·w̄_k·a^{ij}}（(j, k) の辞書式順）"""
    G = P.group
    d = P.rank(i)
    if d == 0:
        return IsotypicSpace(phi, i, np.zeros((0, 0), dtype=complex))
    Q = gr_identity(G, d) if q_basis is None else q_basis
    vectors = []
    for j in range(d):
        coords = [_element_vector(Q[j][l]) for l in range(d)]
        for w in W:
            wb = G.order * bar(G, w)
            vectors.append(np.concatenate([left_multiply(G, wb, c) for c in coords]))
    return IsotypicSpace(phi, i, np.array(vectors))


def _lstsq_coords(basis_rows: np.ndarray, targets: np.ndarray, what: str) -> np.ndarray:
    """targets の各行を basis_rows の一次結合で表す係数（行）"""
    if targets.shape[0] == 0:
        return np.zeros((0, basis_rows.shape[0]), dtype=complex)
    if basis_rows.shape[0] == 0:
        if np.allclose(targets, 0, atol=NONZERO_SINGULAR):
            return np.zeros((targets.shape[0], 0), dtype=complex)
        raise RankDeficiency(f"{what}: 空の基底で表せません")
    coeffs, _, _, _ = np.linalg.lstsq(basis_rows.T, targets.T, rcond=None)
    residual = coeffs.T @ basis_rows - targets
    scale = max(1.0, float(np.abs(targets).max()))
    if np.abs(residual).max() > NONZERO_SINGULAR * scale:
        raise RankDeficiency(f"{what}: 基底の張る空間に含まれません（残差 {np.abs(residual).max():.3e}）")
    return coeffs.T


def _numerical_rank(singular: np.ndarray, what: str) -> int:
    if singular.size == 0:
        return 0
    ref = max(1.0, float(singular.max()))
    rank = 0
    for s in singular:
        if s > NONZERO_SINGULAR * ref:
            rank += 1
        elif s > ZERO_SINGULAR * ref:
            raise RankDeficiency(f"{what}: 特異値 {s:.3e} のランクを判定できません")
    return rank


def _orthonormal_columns(M: np.ndarray, what: str) -> np.ndarray:
    if M.shape[1] == 0:
        return M
    U, s, _ = np.linalg.svd(M, full_matrices=False)
    r = _numerical_rank(s, what)
    return U[:, :r]


@dataclass(frozen=True, eq=False)
class _PhiData:
    """1 つの φ についての次数ごとの空間と境界（列ベクトル規約）"""
    spaces: Dict[int, IsotypicSpace]
    maps: Dict[int, np.ndarray]


def _phi_data(P: PerfectComplex, phi: int, W: np.ndarray, q_bases: Optional[Mapping[int, GroupRingMatrix]] = None) -> _PhiData:
    G = P.group
    q_bases = q_bases or {}
    spaces = {i: isotypic_basis(P, i, phi, W, q_bases.get(i)) for i in P.degrees}
    maps = {}
    for i in P.degrees:
        n_i = spaces[i].dimension
        n_next = spaces[i + 1].dimension if i + 1 in spaces else 0
        if n_i == 0 or n_next == 0:
            maps[i] = np.zeros((n_next, n_i), dtype=complex)
            continue
        D = _regular_complex(G, P.differential(i))
        images = spaces[i].vectors @ D
        A = _lstsq_coords(spaces[i + 1].vectors, images, f"次数 {i} の境界")
        maps[i] = A.T
    return _PhiData(spaces, maps)


@dataclass(frozen=True, eq=False)
class KMResult:
    """Knudsen–Mumford 同型の分解データ

    reps[i] はコホモロジー代表元（周囲空間の行ベクトル）、scale は
    ⊗(∧u^i)^{(−1)^i} ↦ scale·⊗(∧h^i)^{(−1)^i} の係数。
    """
    phi: int
    reps: Dict[int, np.ndarray]
    scale: complex
    cohomology_dimensions: Dict[int, int]


def _splitting(data: _PhiData, degrees: range) -> Tuple[Dict[int, np.ndarray], Dict[int, np.ndarray], Dict[int, np.ndarray]]:
    """β̃_i（持ち上げ）、β_i（境界）、h_i（コホモロジー）を u 座標の列で返す"""
    lifts, boundaries, kernels = {}, {}, {}
    for i in degrees:
        M = data.maps[i]
        n_i = data.spaces[i].dimension
        if M.size == 0:
            lifts[i] = np.zeros((n_i, 0), dtype=complex)
            kernels[i] = np.eye(n_i, dtype=complex)
            continue
        _, s, Vh = np.linalg.svd(M)
        r = _numerical_rank(s, f"次数 {i} の境界")
        lifts[i] = Vh[:r].conj().T
        kernels[i] = Vh[r:].conj().T
    for i in degrees:
        n_i = data.spaces[i].dimension
        if i - 1 in lifts and lifts[i - 1].shape[1]:
            boundaries[i] = data.maps[i - 1] @ lifts[i - 1]
        else:
            boundaries[i] = np.zeros((n_i, 0), dtype=complex)
    return lifts, boundaries, kernels


def _cohomology_reps(boundaries: np.ndarray, kernel: np.ndarray, what: str) -> np.ndarray:
    """ker ∩ (im)^⊥ の正規直交基底（列）"""
    if kernel.shape[1] == 0:
        return kernel
    if boundaries.shape[1]:
        Qb = _orthonormal_columns(boundaries, what)
        kernel = kernel - Qb @ (Qb.conj().T @ kernel)
    expected = kernel.shape[1] - boundaries.shape[1]
    H = _orthonormal_columns(kernel, what)
    if H.shape[1] != expected:
        raise RankDeficiency(f"{what}: コホモロジーの次元 {H.shape[1]} が期待値 {expected} と一致しません")
    return H


def _det(M: np.ndarray) -> complex:
    if M.shape[0] == 0:
        return 1.0 + 0j
    return complex(np.linalg.det(M))


def _scale(data: _PhiData, degrees: range, reps_u: Dict[int, np.ndarray], lifts, boundaries) -> complex:
    """∏ det[β_i, h_i, β̃_i]^{−(−1)^i}"""
    scale = 1.0 + 0j
    for i in degrees:
        n_i = data.spaces[i].dimension
        Bm = np.concatenate([boundaries[i], reps_u[i], lifts[i]], axis=1) if n_i else np.zeros((0, 0))
        if Bm.shape[0] != Bm.shape[1]:
            raise RankDeficiency(f"次数 {i}: 分解の列数 {Bm.shape[1]} が次元 {Bm.shape[0]} と一致しません")
        det = _det(Bm)
        if abs(det) < ZERO_SINGULAR:
            raise RankDeficiency(f"次数 {i}: 分解が基底になりません")
        scale *= det ** (-1 if i % 2 == 0 else 1)
    return scale


def km_isomorphism(P: PerfectComplex, phi: int, W: np.ndarray, q_bases: Optional[Mapping[int, GroupRingMatrix]] = None) -> KMResult:
    """標準的なコホモロジー代表元を選び、ξ_φ の係数を求める"""
    data = _phi_data(P, phi, W, q_bases)
    degrees = P.degrees
    lifts, boundaries, kernels = _splitting(data, degrees)
    reps_u = {i: _cohomology_reps(boundaries[i], kernels[i], f"次数 {i}") for i in degrees}
    scale = _scale(data, degrees, reps_u, lifts, boundaries)
    reps = {
        i: (reps_u[i].T @ data.spaces[i].vectors) if data.spaces[i].dimension else np.zeros((0, 0), dtype=complex)
        for i in degrees
    }
    dims = {i: reps_u[i].shape[1] for i in degrees}
    return KMResult(phi, reps, scale, dims)


def scale_against(P: PerfectComplex, phi: int, W: np.ndarray, reps: Mapping[int, np.ndarray], q_bases: Optional[Mapping[int, GroupRingMatrix]] = None) -> complex:
    """与えられた代表元 h に対する ξ_φ(⊗∧u_q) の係数"""
    data = _phi_data(P, phi, W, q_bases)
    degrees = P.degrees
    lifts, boundaries, _ = _splitting(data, degrees)
    reps_u = {}
    for i in degrees:
        space = data.spaces[i]
        if space.dimension == 0:
            reps_u[i] = np.zeros((0, 0), dtype=complex)
            continue
        h = reps.get(i)
        if h is None or h.shape[0] == 0:
            reps_u[i] = np.zeros((space.dimension, 0), dtype=complex)
        else:
            reps_u[i] = _lstsq_coords(space.vectors, h, f"次数 {i} の代表元").T
    return _scale(data, degrees, reps_u, lifts, boundaries)


def cohomology_dimensions(P: PerfectComplex, phi: int, W: np.ndarray) -> Dict[int, int]:
    return km_isomorphism(P, phi, W).cohomology_dimensions


# 計量


@dataclass(frozen=True, eq=False)
class DetLineMetric:
    """det(H_φ•) 上の計量（代表元 ⊗(∧h^i)^{(−1)^i} でのノルム）"""
    phi: int
    reps: Dict[int, np.ndarray]
    norm: float

    def __post_init__(self):
        if not self.norm > 0:
            raise ValueError(f"計量のノルムは正である必要があります: {self.norm}")

    def rescaled(self, factor: float) -> "DetLineMetric":
        return DetLineMetric(self.phi, self.reps, self.norm * factor)


@dataclass(frozen=True, eq=False)
class HermitianFormSpec:
    """次数ごとの G 不変正定値エルミート行列（C[G]^{d_i} の座標）"""
    forms: Dict[int, np.ndarray]


@dataclass(frozen=True, eq=False)
class MetrisedComplex:
    complex: PerfectComplex
    table: CharacterTable
    metrics: Tuple[DetLineMetric, ...]
    W: Tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.metrics) != len(self.table):
            raise GroupMismatch(f"計量の数 {len(self.metrics)} が既約指標の数 {len(self.table)} と一致しません")


def W_bases(table: CharacterTable) -> Tuple[np.ndarray, ...]:
    missing = [i for i in range(len(table)) if i not in table.irreps]
    if missing:
        raise DescriptorError(table.group.name or "group", [f"既約指標 χ{i} の表現行列がありません" for i in missing])
    return tuple(orthonormal_W_basis(table.group, table.irreps[i]) for i in range(len(table)))


def default_forms(P: PerfectComplex) -> HermitianFormSpec:
    """μ から誘導される標準形式"""
    return HermitianFormSpec({i: np.eye(P.group.order * P.rank(i), dtype=complex) for i in P.degrees})


def validate_forms(P: PerfectComplex, forms: HermitianFormSpec) -> List[str]:
    """エルミート性、生成元での G 不変性、正定値性を確かめる"""
    G = P.group
    problems = []
    for i in P.degrees:
        n = G.order * P.rank(i)
        K = forms.forms.get(i)
        if K is None:
            problems.append(f"次数 {i} の形式がありません")
            continue
        if K.shape != (n, n):
            problems.append(f"次数 {i} の形式のサイズが {n}×{n} ではありません")
            continue
        if n == 0:
            continue
        if not np.allclose(K, K.conj().T, atol=1e-12 * max(1.0, np.abs(K).max())):
            problems.append(f"次数 {i} の形式がエルミートではありません")
        for s in G.generators:
            L = _left_permutation(G, s, P.rank(i))
            if not np.allclose(L @ K @ L.conj().T, K, atol=1e-9 * max(1.0, np.abs(K).max())):
                problems.append(f"次数 {i} の形式が生成元 {s} で不変ではありません")
                break
        eigenvalues = np.linalg.eigvalsh((K + K.conj().T) / 2)
        if eigenvalues.min() <= ZERO_SINGULAR * max(1.0, eigenvalues.max()):
            problems.append(f"次数 {i} の形式が正定値ではありません")
    return problems


def _left_permutation(G: FiniteGroup, g: int, d: int) -> np.ndarray:
    """x ↦ g·x の行列（行ベクトル規約）"""
    n = G.order
    L = np.zeros((n * d, n * d))
    for j in range(d):
        for h in range(n):
            L[j * n + h, j * n + G.mul[g][h]] = 1.0
    return L


def gram_determinant(space: IsotypicSpace, form: np.ndarray) -> float:
    if space.dimension == 0:
        return 1.0
    gram = space.vectors @ form @ space.vectors.conj().T
    det = np.linalg.det(gram)
    if det.real <= 0:
        raise PrecisionInsufficient(f"次数 {space.degree} の Gram 行列式が正になりません: {det}")
    return float(det.real)


def hermitian_to_metrised(
    P: PerfectComplex,
    table: CharacterTable,
    forms: Optional[HermitianFormSpec] = None,
    W: Optional[Sequence[np.ndarray]] = None,
) -> MetrisedComplex:
    """エルミート複体から誘導される計量 det(k(φ))

    ノルムは ‖x‖/|ξ_φ(x) の係数|、‖x‖ = ∏ det(Gram_i)^{(−1)^i/2}。
    """
    forms = default_forms(P) if forms is None else forms
    problems = validate_forms(P, forms)
    if problems:
        raise DescriptorError(P.name or "complex", problems)
    W = tuple(W_bases(table) if W is None else W)
    metrics = []
    for phi in range(len(table)):
        km = km_isomorphism(P, phi, W[phi])
        log_norm = 0.0
        for i in P.degrees:
            space = isotypic_basis(P, i, phi, W[phi])
            sign = 1 if i % 2 == 0 else -1
            log_norm += sign * 0.5 * np.log(gram_determinant(space, forms.forms[i]))
        norm = float(np.exp(log_norm)) / abs(km.scale)
        metrics.append(DetLineMetric(phi, km.reps, norm))
    logger.debug(f"{P.name}: エルミート形式から {len(metrics)} 個の計量を作りました")
    return MetrisedComplex(P, table, tuple(metrics), W)


def acyclic_metrics(P: PerfectComplex, table: CharacterTable, W: Optional[Sequence[np.ndarray]] = None) -> MetrisedComplex:
    """非輪状複体の計量 |−|（代表元は空、ノルム 1）"""
    W = tuple(W_bases(table) if W is None else W)
    metrics = []
    for phi in range(len(table)):
        km = km_isomorphism(P, phi, W[phi])
        if any(km.cohomology_dimensions.values()):
            raise NotQuasiIso(f"{P.name}: φ={phi} でコホモロジーが消えていません")
        metrics.append(DetLineMetric(phi, km.reps, 1.0))
    return MetrisedComplex(P, table, tuple(metrics), W)


def rescale_metrics(M: MetrisedComplex, alpha: Sequence[float]) -> MetrisedComplex:
    """p_φ = α(φ)^{φ(1)}·q_φ"""
    degrees = M.table.degrees
    metrics = tuple(m.rescaled(float(alpha[m.phi]) ** degrees[m.phi]) for m in M.metrics)
    return MetrisedComplex(M.complex, M.table, metrics, M.W)


@dataclass(frozen=True)
class IsometryCheck:
    tensor_norm: float
    norm: float
    roundtrip_error: float

    def passed(self, tol: float) -> bool:
        return abs(self.tensor_norm - self.norm) <= tol * max(1.0, self.norm) and self.roundtrip_error <= tol


def isometry_self_test(P: PerfectComplex, i: int, form: np.ndarray, x: np.ndarray) -> IsometryCheck:
    """α⁻¹(x) = |G|⁻¹ Σ_f f·x ⊗ f のテンソル計量と x の計量を比べる

    テンソル計量は k ⊗ ν、α(Σ v⊗f) = Σ f̄·v で x に戻ることも確かめる。
    """
    G = P.group
    d = P.rank(i)
    _, nu = standard_forms(G)
    parts = [x[j * G.order:(j + 1) * G.order] for j in range(d)]
    tensor = []
    for f in range(G.order):
        unit = np.zeros(G.order, dtype=complex)
        unit[f] = 1.0
        tensor.append(np.concatenate([left_multiply(G, unit, c) for c in parts]) / G.order)
    norm1_sq = 0.0 + 0j
    for f in range(G.order):
        for f2 in range(G.order):
            if nu[f, f2] != 0:
                norm1_sq += hermitian_value(form, tensor[f], tensor[f2]) * nu[f, f2]
    back = np.zeros_like(x, dtype=complex)
    for f in range(G.order):
        unit = np.zeros(G.order, dtype=complex)
        unit[f] = 1.0
        fbar = bar(G, unit)
        back += np.concatenate([left_multiply(G, fbar, tensor[f][j * G.order:(j + 1) * G.order]) for j in range(d)])
    norm2_sq = hermitian_value(form, x, x)
    return IsometryCheck(
        float(np.sqrt(norm1_sq.real)),
        float(np.sqrt(norm2_sq.real)),
        float(np.abs(back - x).max()) if x.size else 0.0,
    )


def rotated_W_basis(W: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """ランダムなユニタリ行列で回した別の正規直交基底"""
    n = W.shape[0]
    Z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    U, R = np.linalg.qr(Z)
    U = U * (np.diag(R) / np.abs(np.diag(R)))
    return U @ W


# 算術類


def _check_bases(P: PerfectComplex, q_bases, p_bases) -> None:
    G = P.group
    for i, Q in q_bases.items():
        if i not in P.degrees or len(Q) != P.rank(i) or any(len(row) != P.rank(i) for row in Q):
            raise NotABasis(f"次数 {i} の Q[G] 基底のサイズが階数 {P.rank(i)} と一致しません")
        if P.rank(i) and not is_invertible_over_Q(G, Q):
            raise NotABasis(f"次数 {i} の Q[G] 基底が可逆ではありません")
    for p, bases in p_bases.items():
        for i, B in bases.items():
            if i not in P.degrees or len(B) != P.rank(i) or any(len(row) != P.rank(i) for row in B):
                raise NotABasis(f"p={p}, 次数 {i} の Z_p[G] 基底のサイズが階数 {P.rank(i)} と一致しません")
            if P.rank(i) and not is_invertible_over_Zp(G, B, p):
                raise NotABasis(f"p={p}, 次数 {i} の基底が Z_{p}[G] 上可逆ではありません")


def class_support(P: PerfectComplex, q_bases, p_bases, primes: Iterable[int] = ()) -> Tuple[int, ...]:
    """有限座標の台（宣言された素数と基底変換に現れる素数）"""
    support = set(int(p) for p in primes) | set(int(p) for p in p_bases)
    for i, Q in q_bases.items():
        if P.rank(i):
            support |= bad_primes(P.group, Q)
    return tuple(sorted(support))


def arithmetic_class(
    M: MetrisedComplex,
    q_bases: Optional[Mapping[int, GroupRingMatrix]] = None,
    p_bases: Optional[Mapping[int, Mapping[int, GroupRingMatrix]]] = None,
    primes: Iterable[int] = (),
    W: Optional[Sequence[np.ndarray]] = None,
) -> ArithClassRep:
    """χ(P•, p•) の代表元

    有限座標は p ごとに ∏_i (Det(Q^i)/Det(B_p^i))^{(−1)^i}、
    無限座標は (|ξ_φ(⊗∧u_q) の係数|·p_φ(⊗∧h))^{1/φ(1)}。

    Raises:
        NotABasis: 基底が可逆でない
    """
    P, table = M.complex, M.table
    G = P.group
    q_bases = dict(q_bases or {})
    p_bases = {int(p): dict(b) for p, b in (p_bases or {}).items()}
    _check_bases(P, q_bases, p_bases)
    W = tuple(M.W if W is None else W)
    support = class_support(P, q_bases, p_bases, primes)

    size = len(table)
    det_q = {i: _dets(q_bases[i], table) for i in q_bases if P.rank(i)}
    fin = {}
    for p in support:
        values = [CyclotomicNumber.one() for _ in range(size)]
        for i in P.degrees:
            if not P.rank(i):
                continue
            num = det_q.get(i)
            B = p_bases.get(p, {}).get(i)
            den = _dets(B, table) if B is not None else None
            for phi in range(size):
                factor = (num[phi] if num else CyclotomicNumber.one()) / (den[phi] if den else CyclotomicNumber.one())
                values[phi] = values[phi] * (factor if i % 2 == 0 else factor.inverse())
        fin[p] = tuple(values)

    degrees = table.degrees
    arch = []
    for phi in range(size):
        metric = M.metrics[phi]
        scale = scale_against(P, phi, W[phi], metric.reps, q_bases)
        value = (abs(scale) * metric.norm) ** (1.0 / degrees[phi])
        arch.append(ArchValue(value))
    logger.debug(f"{P.name}: 台 {support} の算術類を計算しました")
    return ArithClassRep(table, fin, tuple(arch))


def _dets(Q: GroupRingMatrix, table: CharacterTable) -> Tuple[CyclotomicNumber, ...]:
    return det_of_unit(Q, table)


# 直和・擬同型・固定点


def direct_sum(M1: MetrisedComplex, M2: MetrisedComplex) -> MetrisedComplex:
    """P⊕Q と積の計量（基底は連結）"""
    P, Q = M1.complex, M2.complex
    if M1.table is not M2.table and M1.table != M2.table:
        raise GroupMismatch("異なる群の複体です")
    G = P.group
    low = min(P.low, Q.low)
    high = max(P.high, Q.high)
    ranks = tuple(P.rank(i) + Q.rank(i) for i in range(low, high + 1))
    boundaries = []
    for i in range(low, high):
        bp, bq = _padded_boundary(P, i), _padded_boundary(Q, i)
        boundaries.append(gr_direct_sum(G, bp, bq, P.rank(i), Q.rank(i)))
    S = PerfectComplex(G, low, ranks, tuple(boundaries), f"{P.name}⊕{Q.name}")

    metrics = []
    for m1, m2 in zip(M1.metrics, M2.metrics):
        reps = {}
        for i in range(low, high + 1):
            n1, n2 = G.order * P.rank(i), G.order * Q.rank(i)
            h1 = m1.reps.get(i, np.zeros((0, n1)))
            h2 = m2.reps.get(i, np.zeros((0, n2)))
            h1 = h1.reshape(-1, n1) if h1.size else np.zeros((0, n1), dtype=complex)
            h2 = h2.reshape(-1, n2) if h2.size else np.zeros((0, n2), dtype=complex)
            top = np.concatenate([h1, np.zeros((h1.shape[0], n2), dtype=complex)], axis=1)
            bottom = np.concatenate([np.zeros((h2.shape[0], n1), dtype=complex), h2], axis=1)
            reps[i] = np.concatenate([top, bottom], axis=0)
        metrics.append(DetLineMetric(m1.phi, reps, m1.norm * m2.norm))
    return MetrisedComplex(S, M1.table, tuple(metrics), M1.W)


def _padded_boundary(P: PerfectComplex, i: int) -> GroupRingMatrix:
    if P.low <= i < P.high:
        return P.boundary(i)
    return tuple(tuple(GroupRingElement.zero(P.group) for _ in range(P.rank(i))) for _ in range(P.rank(i + 1)))


def direct_sum_bases(P: PerfectComplex, Q: PerfectComplex, a: Mapping[int, GroupRingMatrix], b: Mapping[int, GroupRingMatrix]) -> Dict[int, GroupRingMatrix]:
    """基底の連結（片方が省略されれば標準基底）"""
    G = P.group
    out = {}
    for i in set(a) | set(b):
        A = a.get(i, gr_identity(G, P.rank(i)))
        B = b.get(i, gr_identity(G, Q.rank(i)))
        out[i] = gr_direct_sum(G, A, B, P.rank(i), Q.rank(i))
    return out


@dataclass(frozen=True)
class ChainMap:
    """α: C → D（maps[i] は rank C^i × rank D^i の群環行列、右作用）"""
    source: PerfectComplex
    target: PerfectComplex
    maps: Dict[int, GroupRingMatrix] = field(hash=False)

    def __post_init__(self):
        C, D = self.source, self.target
        G = C.group
        for i in set(C.degrees) | set(D.degrees):
            a = self.map(i)
            if len(a) != C.rank(i) or any(len(row) != D.rank(i) for row in a):
                raise NotQuasiIso(f"次数 {i} の写像のサイズが {C.rank(i)}×{D.rank(i)} ではありません")
        for i in set(C.degrees) | set(D.degrees):
            left = gr_multiply(G, self.map(i), D.differential(i)) if C.rank(i) and D.rank(i) and D.rank(i + 1) else None
            right = gr_multiply(G, C.differential(i), self.map(i + 1)) if C.rank(i) and C.rank(i + 1) and D.rank(i + 1) else None
            left_zero = left is None or gr_is_zero(left)
            right_zero = right is None or gr_is_zero(right)
            if left is not None and right is not None:
                if left != right:
                    raise NotQuasiIso(f"次数 {i} で ∂α ≠ α∂ です")
            elif not (left_zero and right_zero):
                raise NotQuasiIso(f"次数 {i} で ∂α ≠ α∂ です")

    def map(self, i: int) -> GroupRingMatrix:
        if i in self.maps:
            return self.maps[i]
        zero = GroupRingElement.zero(self.source.group)
        return tuple(tuple(zero for _ in range(self.target.rank(i))) for _ in range(self.source.rank(i)))


def quasi_iso_transport(alpha: ChainMap, N: MetrisedComplex, table: Optional[CharacterTable] = None) -> MetrisedComplex:
    """c_φ = d_φ ∘ det(H(α_φ))

    Raises:
        NotQuasiIso: コホモロジー上の写像が可逆でない
    """
    C, D = alpha.source, alpha.target
    G = C.group
    table = N.table if table is None else table
    metrics = []
    for phi in range(len(table)):
        W = N.W[phi]
        km_C = km_isomorphism(C, phi, W)
        d_metric = N.metrics[phi]
        data_D = _phi_data(D, phi, W)
        log_factor = 0.0
        for i in sorted(set(C.degrees) | set(D.degrees)):
            hC = km_C.reps.get(i)
            hD = d_metric.reps.get(i)
            nC = 0 if hC is None else hC.shape[0]
            nD = 0 if hD is None else hD.shape[0]
            if nC != nD:
                raise NotQuasiIso(f"φ={phi}, 次数 {i}: コホモロジーの次元 {nC} と {nD} が異なります")
            if nC == 0:
                continue
            image = hC @ _regular_complex(G, alpha.map(i))
            span = [hD]
            if i - 1 in data_D.spaces and data_D.spaces[i - 1].dimension:
                span.append(data_D.spaces[i - 1].vectors @ _regular_complex(G, D.differential(i - 1)))
            basis = np.concatenate(span, axis=0)
            coeffs = _lstsq_coords(basis, image, f"φ={phi}, 次数 {i} の H(α)")
            Mi = coeffs[:, :nD]
            det = abs(_det(Mi))
            if det < NONZERO_SINGULAR:
                raise NotQuasiIso(f"φ={phi}, 次数 {i}: H(α) が可逆ではありません")
            log_factor += (1 if i % 2 == 0 else -1) * np.log(det)
        metrics.append(DetLineMetric(phi, km_C.reps, float(np.exp(log_factor)) * d_metric.norm))
    return MetrisedComplex(C, table, tuple(metrics), N.W)


def fixed_point_complex(P: PerfectComplex, trivial_group: FiniteGroup) -> PerfectComplex:
    """P^G（基底 N·e_j、境界 ε(B)）"""
    boundaries = tuple(
        gr_matrix(trivial_group, [[c for c in row] for row in augment_matrix(B)])
        for B in P.boundaries
    )
    return PerfectComplex(trivial_group, P.low, P.ranks, boundaries, f"{P.name}^G")


def fixed_point_class(
    M: MetrisedComplex,
    trivial_table: CharacterTable,
    q_bases: Optional[Mapping[int, GroupRingMatrix]] = None,
    p_bases: Optional[Mapping[int, Mapping[int, GroupRingMatrix]]] = None,
    primes: Iterable[int] = (),
) -> ArithClassRep:
    """自明指標の計量を持つ固定点複体の類（自明群上）

    N·x ↔ x の単位元成分、基底は ε(Q), ε(B_p)。
    """
    P = M.complex
    G = P.group
    T = trivial_table.group
    FP = fixed_point_complex(P, T)
    metric = M.metrics[0]
    reps = {}
    for i, h in metric.reps.items():
        d = P.rank(i)
        if h.size == 0:
            reps[i] = np.zeros((0, d), dtype=complex)
            continue
        reps[i] = np.array([[row[j * G.order + G.identity] for j in range(d)] for row in h], dtype=complex)
    W_trivial = (np.array([[1.0 + 0j]]),)
    fixed = MetrisedComplex(FP, trivial_table, (DetLineMetric(0, reps, metric.norm),), W_trivial)

    def augment(bases):
        return {i: gr_matrix(T, augment_matrix(Q)) for i, Q in (bases or {}).items()}

    fp_p_bases = {p: augment(b) for p, b in (p_bases or {}).items()}
    support = class_support(P, dict(q_bases or {}), dict(p_bases or {}), primes)
    return arithmetic_class(fixed, augment(q_bases), fp_p_bases, primes=support)


def fixed_point_identity_check(M: MetrisedComplex, trivial_table: CharacterTable, rel_tol: float = 1e-9, **bases) -> Tuple[bool, ArithClassRep, ArithClassRep]:
    """f(1_G) = h(1) の自己検査"""
    f = arithmetic_class(M, bases.get("q_bases"), bases.get("p_bases"), bases.get("primes", ()))
    h = fixed_point_class(M, trivial_table, bases.get("q_bases"), bases.get("p_bases"), bases.get("primes", ()))
    fin_ok = {p: v[0] for p, v in f.fin.items() if v[0] != 1} == {p: v[0] for p, v in h.fin.items() if v[0] != 1}
    arch_ok = f.arch[0].close_to(h.arch[0], rel_tol)
    return fin_ok and arch_ok, f, h


def smith_oracle(P: PerfectComplex) -> int:
    """自明群上の 2 項正方複体 Z^d → Z^d の |det|（Smith 標準形の対角成分の積）"""
    if P.group.order != 1 or len(P.ranks) != 2 or P.ranks[0] != P.ranks[1]:
        raise GroupMismatch("自明群上の 2 項正方複体ではありません")
    rows = augment_matrix(P.boundaries[0])
    if any(c.denominator != 1 for row in rows for c in row):
        raise NotABasis("境界が整数行列ではありません")
    snf = smith_normal_form(Matrix([[int(c) for c in row] for row in rows]), domain=ZZ)
    product = 1
    for k in range(P.ranks[0]):
        product *= int(snf[k, k])
    return abs(product)

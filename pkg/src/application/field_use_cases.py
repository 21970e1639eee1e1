"""順分岐体のレポートユースケース"""
import logging
from typing import Any, Dict, List, Tuple

from ..domain.classrep import delta_K, theta_rational
from ..domain.entities import CheckResult, CommandResult, Report, RunConfig
from ..domain.errors import NotVisiblyRational, PrecisionInsufficient, TamearithError
from ..domain.groupchar import symplectic_generators
from ..domain.tamefield import (
    TameFieldDescriptor,
    artin_conductor_p,
    chi_ring_of_integers,
    eps_infinity_tilde,
    exact_resolvent,
    exact_resolvent_norm,
    galois_action_check,
    gauss_magnitude_check,
    intersection_representative,
    normal_basis_matrix_check,
    normalized_ring_class,
    pfaffian,
    pfaffian_total,
    resolvent,
    resolvent_norm,
    resolvent_sign_check,
    ring_class_representative,
)
from ..infrastructure.codecs import (
    encode_arch,
    encode_class_rep,
    encode_cyclotomic,
    encode_interval,
    encode_rational,
    encode_symplectic,
    encode_theta,
)
from ..infrastructure.corpus_repository import CorpusRepository
from ..infrastructure.repositories import StructuredLoggerRepository

logger = logging.getLogger(__name__)


class FieldReportUseCase:
    """ε̃_∞⁻¹Pf⁻¹ × δ_K の代表元とその θ、レゾルベントの符号と大きさを報告する"""

    def __init__(self, corpus_repository: CorpusRepository, logger_repository: StructuredLoggerRepository):
        self._corpus = corpus_repository
        self._logger = logger_repository

    def execute(self, config: RunConfig) -> CommandResult:
        """
        Args:
            config: inputs に体の記述子を並べた設定

        Returns:
            CommandResult: 体ごとのレポート項目と検査結果
        """
        logger.info(f"体のレポート作成開始 - 入力数: {len(config.inputs)}")
        try:
            items, checks = [], []
            for ref in config.inputs:
                F = self._corpus.load_field(ref)
                item, item_checks = self._report(ref, F, config.tolerance)
                items.append(item)
                checks.extend(item_checks)
            self._logger.log_info("体のレポート作成完了", inputs=len(config.inputs))
            return CommandResult.success_result(Report(config.echo(), items, checks))
        except PrecisionInsufficient as e:
            logger.error(f"精度不足: {e}（--precision-bits {e.suggested_bits} を試してください）")
            return CommandResult.error_result(str(e), suggested_precision_bits=e.suggested_bits)
        except (TamearithError, OSError) as e:
            logger.error(f"体のレポート作成に失敗しました: {e}")
            return CommandResult.error_result(str(e))

    def _report(self, ref: str, F: TameFieldDescriptor, tol: float) -> Tuple[Dict[str, Any], List[CheckResult]]:
        table = F.table
        G = F.group

        # 1. 既約指標ごとのレゾルベント
        resolvents = []
        for i in range(len(table)):
            row = {"label": f"χ{i}", "interval": encode_interval(resolvent(F, i))}
            if F.exact is not None:
                row["exact"] = encode_cyclotomic(exact_resolvent(F, i))
            resolvents.append(row)

        # 2. シンプレクティック生成元ごとの ε̃、Pfaffian、導手、δ_K
        generators = []
        for psi in symplectic_generators(table):
            row = {
                "label": psi.label(),
                "degree": psi.degree(table),
                "eps_infinity_tilde": eps_infinity_tilde(F, psi),
                "pfaffian": {str(p): encode_rational(v) for p, v in pfaffian(F, psi).items()},
                "pfaffian_total": encode_rational(pfaffian_total(F, psi)),
                "conductor": {str(r.p): artin_conductor_p(F, psi, r.p) for r in F.ram},
                "resolvent_norm": encode_interval(resolvent_norm(F, psi)),
                "delta_K": encode_arch(delta_K(F.k_degree, F.d_K, G.order, psi.degree(table))),
            }
            if F.exact is not None:
                row["resolvent_norm_exact"] = encode_cyclotomic(exact_resolvent_norm(F, psi))
            generators.append(row)

        # 3. 代表元と θ∘tilde
        representative = ring_class_representative(F)
        theta = theta_rational(representative.tilde())
        item = {
            "input": ref,
            "field": F.name,
            "group": G.name,
            "ramified_primes": list(F.ramified_primes),
            "exact_embeddings": F.exact is not None,
            "integral_normal_basis": F.integral_normal_basis,
            "resolvents": resolvents,
            "symplectic": generators,
            "representative": encode_symplectic(representative),
            "theta_tilde": encode_theta(theta),
        }
        if F.intersections is not None:
            eps = [eps_infinity_tilde(F, psi) for psi in representative.generators]
            branch = intersection_representative(table, F.intersections, eps, F.k_degree, F.d_K)
            item["intersection_representative"] = encode_symplectic(branch)
            item["intersection_theta_tilde"] = encode_theta(theta_rational(branch.tilde()))

        # 4. 検査
        checks = self._checks(F)
        if F.integral_normal_basis and F.exact is not None:
            ring_item, ring_checks = self._ring_class(F, theta, tol)
            item.update(ring_item)
            checks.extend(ring_checks)
        logger.info(f"{F.name}: 生成元 {len(generators)} 個のレポートを作りました")
        return item, checks

    def _checks(self, F: TameFieldDescriptor) -> List[CheckResult]:
        name = F.name
        checks = [CheckResult(f"{name}.normal_basis", normal_basis_matrix_check(F))]
        for c in resolvent_sign_check(F):
            checks.append(CheckResult(
                f"{name}.resolvent_sign[{c.label}]", c.holds, {"sign": c.resolvent_sign, "eps": c.eps}
            ))
        for c in gauss_magnitude_check(F):
            checks.append(CheckResult(
                f"{name}.pfaffian_magnitude[{c.label}]",
                c.holds,
                {"squares_match": c.squares_match, "resolvent_match": c.resolvent_match},
            ))
        failures = []
        for i in range(len(F.table)):
            for g in range(F.group.order):
                ok, residual = galois_action_check(F, i, g)
                if not ok:
                    failures.append({"index": i, "g": g, "residual": residual})
        checks.append(
            CheckResult.ok(f"{name}.galois_action")
            if not failures
            else CheckResult.failed(f"{name}.galois_action", reproduction=failures[0], failures=len(failures))
        )
        return checks

    def _ring_class(self, F: TameFieldDescriptor, theta, tol: float):
        """整数環の算術類と、正規化した代表元の θ∘tilde"""
        ring = chi_ring_of_integers(F)
        item = {"ring_class": encode_class_rep(ring)}
        try:
            normalized = theta_rational(normalized_ring_class(F, tol).tilde())
        except NotVisiblyRational as e:
            logger.warning(f"{F.name}: 正規化した類が目に見えて有理になりません: {e}")
            return item, [CheckResult.failed(f"{F.name}.normalized_class", error=str(e))]
        item["normalized_theta_tilde"] = encode_theta(normalized)
        ok = all(abs(x) == abs(y) for x, y in zip(normalized.values, theta.values))
        return item, [CheckResult(f"{F.name}.normalized_class", ok)]

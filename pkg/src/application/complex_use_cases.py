"""計量付き複体の算術類ユースケース"""
import logging
from typing import Any, Dict, List, Tuple

from ..domain.classrep import ArchValue, ArithClassRep, class_invariants, one_G_coordinate
from ..domain.entities import CheckResult, CommandResult, ComplexDescriptor, Report, RunConfig
from ..domain.errors import PrecisionInsufficient, TamearithError
from ..domain.metcomplex import (
    MetrisedComplex,
    acyclic_metrics,
    arithmetic_class,
    fixed_point_identity_check,
    hermitian_to_metrised,
    km_isomorphism,
    rescale_metrics,
    smith_oracle,
)
from ..infrastructure.codecs import encode_arch, encode_class_rep, encode_cyclotomic, encode_float
from ..infrastructure.corpus_repository import CorpusRepository
from ..infrastructure.repositories import StructuredLoggerRepository

logger = logging.getLogger(__name__)


class ComplexClassUseCase:
    """複体の記述子から χ(P•, p•) の代表元を求める"""

    def __init__(self, corpus_repository: CorpusRepository, logger_repository: StructuredLoggerRepository):
        self._corpus = corpus_repository
        self._logger = logger_repository

    def execute(self, config: RunConfig) -> CommandResult:
        """
        Args:
            config: inputs に複体の記述子を並べた設定

        Returns:
            CommandResult: 既約指標ごとの有限・無限座標と自己検査
        """
        logger.info(f"算術類の計算開始 - 入力数: {len(config.inputs)}")
        try:
            items, checks = [], []
            for ref in config.inputs:
                descriptor = self._corpus.load_complex(ref)
                item, item_checks = self._process(ref, descriptor, config.tolerance)
                items.append(item)
                checks.extend(item_checks)
            self._logger.log_info("算術類の計算完了", inputs=len(config.inputs))
            return CommandResult.success_result(Report(config.echo(), items, checks))
        except PrecisionInsufficient as e:
            logger.error(f"精度不足: {e}")
            return CommandResult.error_result(str(e), suggested_precision_bits=e.suggested_bits)
        except (TamearithError, OSError) as e:
            logger.error(f"算術類の計算に失敗しました: {e}")
            return CommandResult.error_result(str(e))

    def _process(self, ref: str, d: ComplexDescriptor, tol: float) -> Tuple[Dict[str, Any], List[CheckResult]]:
        P, table = d.complex, d.table
        name = P.name

        # 1. 計量を作る
        if d.metric == "acyclic":
            M = acyclic_metrics(P, table)
        else:
            M = hermitian_to_metrised(P, table, d.forms)

        # 2. 算術類を求める
        a = arithmetic_class(M, d.q_bases, d.p_bases, d.primes)
        fin_1, arch_1 = one_G_coordinate(a)
        item = {
            "input": ref,
            "complex": name,
            "group": table.group.name,
            "degrees": [P.low, P.high],
            "ranks": list(P.ranks),
            "metric": d.metric,
            "cohomology_dimensions": {
                f"χ{phi}": {str(i): n for i, n in km_isomorphism(P, phi, M.W[phi]).cohomology_dimensions.items()}
                for phi in range(len(table))
            },
            "class": encode_class_rep(a),
            "class_invariants": {f"χ{i}": encode_arch(v) for i, v in enumerate(class_invariants(a))},
            "one_G": {
                "fin": {str(p): encode_cyclotomic(v) for p, v in fin_1.items()},
                "arch": encode_arch(arch_1),
            },
        }

        # 3. 自己検査
        checks = [self._fixed_point_check(name, M, d, tol)]
        if d.metric == "acyclic":
            identity = ArithClassRep.identity(table)
            checks.append(CheckResult(f"{name}.acyclic_identity", a.equals(identity, tol)))
        if d.rescale is not None:
            ratio_item, check = self._rescale(name, M, a, d, tol)
            item["rescale"] = ratio_item
            checks.append(check)
        if table.group.order == 1 and len(P.ranks) == 2 and P.ranks[0] == P.ranks[1]:
            expected = smith_oracle(P)
            if expected:
                scale = abs(km_isomorphism(P, P.low, M.W[0]).scale)
                item["smith"] = {"determinant": expected, "scale": encode_float(scale)}
                checks.append(CheckResult(f"{name}.smith_normal_form", abs(scale - expected) <= 100 * tol * expected))
        logger.info(f"{name}: 台 {a.support} の類を求めました")
        return item, checks

    def _fixed_point_check(self, name: str, M: MetrisedComplex, d: ComplexDescriptor, tol: float) -> CheckResult:
        trivial = self._corpus.load_group("trivial")
        ok, f, h = fixed_point_identity_check(M, trivial, tol, q_bases=d.q_bases, p_bases=d.p_bases, primes=d.primes)
        return CheckResult(
            f"{name}.fixed_point_identity",
            ok,
            {"f_arch": encode_arch(f.arch[0]), "h_arch": encode_arch(h.arch[0])},
        )

    def _rescale(self, name: str, M: MetrisedComplex, a: ArithClassRep, d: ComplexDescriptor, tol: float):
        """p_φ = α(φ)^{φ(1)}·q_φ の比は (1, α(φ))"""
        b = arithmetic_class(rescale_metrics(M, d.rescale), d.q_bases, d.p_bases, d.primes)
        ratio = b / a
        ok = not ratio.fin and all(
            ratio.arch[i].close_to(ArchValue(alpha), 10 * tol) for i, alpha in enumerate(d.rescale)
        )
        item = {
            "alpha": [encode_float(x) for x in d.rescale],
            "ratio": encode_class_rep(ratio),
        }
        return item, CheckResult(f"{name}.rescale_law", ok)

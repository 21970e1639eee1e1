"""指標表ユースケース"""
import logging
from typing import Any, Dict, List

from ..domain.entities import CheckResult, CommandResult, Report, RunConfig
from ..domain.errors import PrecisionInsufficient, TamearithError
from ..domain.groupchar import (
    CharacterTable,
    frobenius_schur_indicators,
    inner_product,
    symplectic_generators,
)
from ..infrastructure.codecs import encode_character, encode_values
from ..infrastructure.corpus_repository import CorpusRepository
from ..infrastructure.repositories import StructuredLoggerRepository

logger = logging.getLogger(__name__)


class CharacterTableUseCase:
    """群の記述子から指標表、Frobenius–Schur 指標、シンプレクティック生成系を求める"""

    def __init__(self, corpus_repository: CorpusRepository, logger_repository: StructuredLoggerRepository):
        self._corpus = corpus_repository
        self._logger = logger_repository

    def execute(self, config: RunConfig) -> CommandResult:
        """
        Args:
            config: inputs に群の記述子（パスまたはコーパス id）を並べた設定

        Returns:
            CommandResult: 群ごとの表と直交関係の検査
        """
        logger.info(f"指標表の計算開始 - 入力数: {len(config.inputs)}")
        try:
            items, checks = [], []
            for ref in config.inputs:
                # 1. 記述子を読み込み、表を検証する
                table = self._corpus.load_group(ref)
                # 2. 表の内容をレポート項目にする
                items.append(self._describe(ref, table))
                checks.extend(self._checks(table))
            self._logger.log_info("指標表の計算完了", inputs=len(config.inputs))
            return CommandResult.success_result(Report(config.echo(), items, checks))
        except PrecisionInsufficient as e:
            logger.error(f"精度不足: {e}")
            return CommandResult.error_result(str(e), suggested_precision_bits=e.suggested_bits)
        except (TamearithError, OSError) as e:
            logger.error(f"指標表の計算に失敗しました: {e}")
            return CommandResult.error_result(str(e))

    def _describe(self, ref: str, table: CharacterTable) -> Dict[str, Any]:
        G = table.group
        indicators = frobenius_schur_indicators(table)
        return {
            "input": ref,
            "group": G.name,
            "order": G.order,
            "conductor": table.conductor,
            "classes": [
                {"representative": rep, "size": size}
                for rep, size in zip(table.classes.representatives, table.class_sizes)
            ],
            "characters": [
                {
                    "label": f"χ{i}",
                    "degree": table.degrees[i],
                    "values": encode_values(chi.values),
                    "frobenius_schur": indicators[i],
                    "has_representation": i in table.irreps,
                }
                for i, chi in enumerate(table.characters)
            ],
            "frobenius_schur": list(indicators),
            "symplectic_generators": [
                {"label": psi.label(), "character": encode_character(psi), "degree": psi.degree(table)}
                for psi in symplectic_generators(table)
            ],
        }

    def _checks(self, table: CharacterTable) -> List[CheckResult]:
        name = table.group.name
        size = len(table)
        failures = [
            (i, j)
            for i in range(size)
            for j in range(size)
            if inner_product(table.character(i), table.character(j), table) != (1 if i == j else 0)
        ]
        orthogonality = (
            CheckResult.ok(f"{name}.orthogonality")
            if not failures
            else CheckResult.failed(f"{name}.orthogonality", reproduction={"pairs": failures})
        )
        degree_sum = sum(d * d for d in table.degrees)
        squares = CheckResult(f"{name}.degree_square_sum", degree_sum == table.group.order, {"sum": degree_sum})
        return [orthogonality, squares]

"""検証スイートユースケース"""
import logging

from ..domain.entities import CheckResult, CommandResult, ComputationLimits, Report, RunConfig
from ..domain.errors import DescriptorError, PrecisionInsufficient, TamearithError
from ..infrastructure.corpus_repository import CorpusRepository
from ..infrastructure.repositories import StructuredLoggerRepository
from .suites import SuiteContext, suite_registry

logger = logging.getLogger(__name__)


class VerifyUseCase:
    """モジュールごとの性質検査を順に実行し、1 つのレポートにまとめる"""

    def __init__(
        self,
        corpus_repository: CorpusRepository,
        logger_repository: StructuredLoggerRepository,
        limits: ComputationLimits,
    ):
        self._corpus = corpus_repository
        self._logger = logger_repository
        self._limits = limits

    def execute(self, config: RunConfig) -> CommandResult:
        """
        Args:
            config: suite と seed、tolerance を持つ設定

        Returns:
            CommandResult: 全て通れば終了コード 0、1 つでも落ちれば 1
        """
        logger.info(f"検証開始 - スイート: {', '.join(config.suites)}, seed: {config.seed}")
        registry = suite_registry()
        items, checks = [], []
        try:
            for name in config.suites:
                # 各スイートは独立した乱数源とコンテキストで動かす
                context = SuiteContext(self._corpus, config.seed, config.tolerance, self._limits)
                results = self._run_suite(name, registry[name], context)
                items.append({
                    "suite": name,
                    "checks": len(results),
                    "passed": all(r.passed for r in results),
                })
                checks.extend(results)
        except PrecisionInsufficient as e:
            logger.error(f"精度不足: {e}")
            return CommandResult.error_result(str(e), suggested_precision_bits=e.suggested_bits)
        except (DescriptorError, OSError) as e:
            logger.error(f"コーパスを読み込めません: {e}")
            return CommandResult.error_result(str(e))

        report = Report(config.echo(), items, checks)
        self._logger.log_info("検証完了", passed=report.passed, checks=len(checks))
        return CommandResult.success_result(report)

    def _run_suite(self, name: str, runner, context: SuiteContext):
        try:
            return runner(context)
        except (PrecisionInsufficient, DescriptorError):
            raise
        except TamearithError as e:
            logger.error(f"{name}: 検査中に例外が発生しました: {e}")
            return [CheckResult.failed(
                f"{name}.completed",
                reproduction={"suite": name, "seed": context.seed, "error": f"{type(e).__name__}: {e}"},
            )]

"""レポートを出力するコマンドの共通コントローラー"""
import argparse
import logging
import sys
import time

from ...domain.entities import EXIT_INPUT_ERROR, CommandResult, Report, RunConfig
from ...infrastructure.repositories import ReportRepository
from ..views.report_renderer import ReportRenderer

logger = logging.getLogger(__name__)


class UsageError(ValueError):
    """コマンドライン引数の誤り（終了コード 2）"""


class ReportController:
    """ユースケースを実行し、結果を JSON かテキストで書き出して終了コードを返す

    サブクラスは入力の検証だけを差し替える。
    """

    requires_inputs = True

    def __init__(self, use_case, report_repository: ReportRepository, renderer: ReportRenderer):
        self._use_case = use_case
        self._report_repository = report_repository
        self._renderer = renderer

    def handle(self, args: argparse.Namespace) -> int:
        """コマンドを 1 回実行する

        Args:
            args: argparse で解析した引数（既定値は AppConfig から入っている）

        Returns:
            int: 終了コード（0 合格、1 検証の失敗、2 入力の誤り）
        """
        logger.info(f"{args.command} 開始 - 入力: {args.inputs}")

        # 入力バリデーション
        try:
            self._validate_inputs(args)
            config = self._create_request(args)
        except ValueError as e:
            return self._report_error(CommandResult.error_result(str(e)))

        # ユースケースの実行
        started = time.perf_counter()
        result = self._use_case.execute(config)

        # 結果の検証
        if not self._validate_result(result):
            return self._report_error(result)

        result.report.elapsed_seconds = time.perf_counter() - started
        try:
            self._report_repository.write(self._create_response(config, result.report), config.output_path)
        except OSError as e:
            return self._report_error(CommandResult.error_result(f"出力を書き込めません: {e}"))

        logger.info(f"{args.command} 完了 - 終了コード {result.exit_code}")
        return result.exit_code

    def _validate_inputs(self, args: argparse.Namespace) -> None:
        """入力値のバリデーション"""
        if self.requires_inputs and not args.inputs:
            raise UsageError(f"{args.command}: 記述子ファイルを 1 つ以上指定してください")

    def _create_request(self, args: argparse.Namespace) -> RunConfig:
        """引数から RunConfig を作成"""
        return RunConfig(
            command=args.command,
            inputs=list(args.inputs),
            seed=args.seed,
            tolerance=args.tol,
            precision_bits=args.precision_bits,
            output_path=args.out,
            format=args.format,
            suite=getattr(args, "suite", "all"),
        )

    def _validate_result(self, result: CommandResult) -> bool:
        return result.success and result.report is not None

    def _create_response(self, config: RunConfig, report: Report) -> str:
        if config.format == "text":
            return self._renderer.render_report(config.command, report)
        return self._report_repository.to_json(report)

    def _report_error(self, result: CommandResult) -> int:
        """診断を標準エラーに書く"""
        message = f"error: {result.error_message}"
        if result.suggested_precision_bits:
            message += f"\nhint: --precision-bits {result.suggested_precision_bits} で再実行してください"
        print(message, file=sys.stderr)
        logger.error(result.error_message)
        return result.exit_code or EXIT_INPUT_ERROR

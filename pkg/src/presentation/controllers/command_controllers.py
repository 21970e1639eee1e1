"""コマンドごとのコントローラー"""
import argparse

from .report_controller import ReportController, UsageError


class CharsController(ReportController):
    """chars: 群の記述子 → 指標表"""


class ComplexClassController(ReportController):
    """class-complex: 複体の記述子 → 算術類"""


class FieldReportController(ReportController):
    """field-report: 体の記述子 → θ を含むレポート"""


class VerifyController(ReportController):
    """verify: 検証スイート（記述子は取らない）"""

    requires_inputs = False

    def _validate_inputs(self, args: argparse.Namespace) -> None:
        if args.inputs:
            raise UsageError("verify は記述子を取りません（--suite でスイートを選びます）")


class CorpusController(ReportController):
    """corpus: 同梱記述子の一覧"""

    requires_inputs = False

    def _validate_inputs(self, args: argparse.Namespace) -> None:
        unknown = [k for k in args.inputs if k not in ("groups", "fields", "complexes")]
        if unknown:
            raise UsageError(f"corpus の種類は groups, fields, complexes です: {unknown}")

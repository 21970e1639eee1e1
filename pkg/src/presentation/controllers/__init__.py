"""プレゼンテーション層コントローラー"""
from .command_controllers import (
    CharsController,
    ComplexClassController,
    CorpusController,
    FieldReportController,
    VerifyController,
)
from .report_controller import ReportController, UsageError

__all__ = [
    'CharsController',
    'ComplexClassController',
    'CorpusController',
    'FieldReportController',
    'ReportController',
    'UsageError',
    'VerifyController',
]

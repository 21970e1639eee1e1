from typing import Optional

from ..application.character_use_cases import CharacterTableUseCase
from ..application.complex_use_cases import ComplexClassUseCase
from ..application.corpus_use_cases import CorpusListingUseCase
from ..application.field_use_cases import FieldReportUseCase
from ..application.verify_use_cases import VerifyUseCase
from ..presentation.controllers import (
    CharsController,
    ComplexClassController,
    CorpusController,
    FieldReportController,
    ReportController,
    VerifyController,
)
from ..presentation.views.report_renderer import ReportRenderer
from .config import AppConfig, ConfigManager
from .corpus_repository import CorpusRepository
from .repositories import ReportRepository, StructuredLoggerRepository


class DIContainer:
    """依存性注入コンテナ"""

    def __init__(self, config: Optional[AppConfig] = None):
        self._config = config or ConfigManager().get_config()
        self._instances = {}

    def get_config(self) -> AppConfig:
        """設定を取得"""
        return self._config

    def get_logger_repository(self) -> StructuredLoggerRepository:
        """ログリポジトリを取得"""
        if 'logger_repository' not in self._instances:
            self._instances['logger_repository'] = StructuredLoggerRepository()
        return self._instances['logger_repository']

    def get_corpus_repository(self) -> CorpusRepository:
        """コーパスリポジトリを取得"""
        if 'corpus_repository' not in self._instances:
            self._instances['corpus_repository'] = CorpusRepository(
                self._config.corpus_dir,
                self._config.max_group_order
            )
        return self._instances['corpus_repository']

    def get_report_repository(self) -> ReportRepository:
        """レポートリポジトリを取得"""
        if 'report_repository' not in self._instances:
            self._instances['report_repository'] = ReportRepository()
        return self._instances['report_repository']

    def get_report_renderer(self) -> ReportRenderer:
        """テキストレポートのレンダラーを取得"""
        if 'report_renderer' not in self._instances:
            self._instances['report_renderer'] = ReportRenderer()
        return self._instances['report_renderer']

    def get_character_table_use_case(self) -> CharacterTableUseCase:
        if 'character_table_use_case' not in self._instances:
            self._instances['character_table_use_case'] = CharacterTableUseCase(
                self.get_corpus_repository(),
                self.get_logger_repository()
            )
        return self._instances['character_table_use_case']

    def get_complex_class_use_case(self) -> ComplexClassUseCase:
        if 'complex_class_use_case' not in self._instances:
            self._instances['complex_class_use_case'] = ComplexClassUseCase(
                self.get_corpus_repository(),
                self.get_logger_repository()
            )
        return self._instances['complex_class_use_case']

    def get_field_report_use_case(self) -> FieldReportUseCase:
        if 'field_report_use_case' not in self._instances:
            self._instances['field_report_use_case'] = FieldReportUseCase(
                self.get_corpus_repository(),
                self.get_logger_repository()
            )
        return self._instances['field_report_use_case']

    def get_verify_use_case(self) -> VerifyUseCase:
        """検証スイートユースケースを取得（標本数は設定の limits に従う）"""
        if 'verify_use_case' not in self._instances:
            self._instances['verify_use_case'] = VerifyUseCase(
                self.get_corpus_repository(),
                self.get_logger_repository(),
                self._config.limits
            )
        return self._instances['verify_use_case']

    def get_corpus_listing_use_case(self) -> CorpusListingUseCase:
        if 'corpus_listing_use_case' not in self._instances:
            self._instances['corpus_listing_use_case'] = CorpusListingUseCase(
                self.get_corpus_repository()
            )
        return self._instances['corpus_listing_use_case']

    def get_controller(self, command: str) -> ReportController:
        """コマンド名に対応するコントローラーを取得"""
        factories = {
            'chars': (CharsController, self.get_character_table_use_case),
            'class-complex': (ComplexClassController, self.get_complex_class_use_case),
            'field-report': (FieldReportController, self.get_field_report_use_case),
            'verify': (VerifyController, self.get_verify_use_case),
            'corpus': (CorpusController, self.get_corpus_listing_use_case),
        }
        key = f'{command}_controller'
        if key not in self._instances:
            controller_class, use_case_factory = factories[command]
            self._instances[key] = controller_class(
                use_case_factory(),
                self.get_report_repository(),
                self.get_report_renderer()
            )
        return self._instances[key]


# グローバルコンテナインスタンス
container = DIContainer()

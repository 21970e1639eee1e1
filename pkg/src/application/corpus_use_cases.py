"""同梱コーパスの一覧ユースケース"""
import logging

from ..domain.entities import CommandResult, Report, RunConfig
from ..domain.errors import TamearithError
from ..infrastructure.corpus_repository import CorpusRepository

logger = logging.getLogger(__name__)


class CorpusListingUseCase:
    def __init__(self, corpus_repository: CorpusRepository):
        self._corpus = corpus_repository

    def execute(self, config: RunConfig) -> CommandResult:
        """corpus_config.json の記述子を種類ごとに並べる（inputs で種類を絞れる）"""
        try:
            kinds = config.inputs or [None]
            items = [e.to_dict() for kind in kinds for e in self._corpus.get_all_entries(kind)]
            logger.info(f"コーパスの記述子 {len(items)} 件")
            return CommandResult.success_result(Report(config.echo(), items))
        except (TamearithError, OSError) as e:
            logger.error(f"コーパスの一覧を取得できません: {e}")
            return CommandResult.error_result(str(e))

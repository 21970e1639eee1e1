import json
import logging
import sys
from pathlib import Path
from typing import Optional

from ..domain.entities import Report

logger = logging.getLogger(__name__)


class ReportRepository:
    """レポートの書き出し（--out があればファイル、なければ標準出力）"""

    def to_json(self, report: Report) -> str:
        """キーを整列した JSON（同じ入力と seed に対してバイト単位で同一）"""
        return json.dumps(report.to_dict(), ensure_ascii=False, sort_keys=True, indent=2) + "\n"

    def write(self, content: str, output_path: Optional[str] = None) -> None:
        if output_path is None:
            sys.stdout.write(content)
            sys.stdout.flush()
            return
        path = Path(output_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(content)
        logger.info(f"レポートを書き出しました: {path}")


class StructuredLoggerRepository:
    """構造化ログリポジトリ"""

    def __init__(self):
        self.logger = logging.getLogger(__name__)

    def log_info(self, message: str, **kwargs):
        """情報ログを出力"""
        self.logger.info(message, extra=kwargs)

    def log_warning(self, message: str, **kwargs):
        """警告ログを出力"""
        self.logger.warning(message, extra=kwargs)

    def log_error(self, message: str, **kwargs):
        """エラーログを出力"""
        self.logger.error(message, extra=kwargs)

    def log_debug(self, message: str, **kwargs):
        """デバッグログを出力"""
        self.logger.debug(message, extra=kwargs)

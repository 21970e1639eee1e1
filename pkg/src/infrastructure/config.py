import os
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from ..domain.entities import ComputationLimits


# 定数定義
BUNDLED_CORPUS = str(Path(__file__).resolve().parent.parent / "corpus")
CORPUS_INDEX = "corpus_config.json"


@dataclass
class AppConfig:
    """アプリケーション設定"""
    # コーパス設定
    corpus_dir: str = BUNDLED_CORPUS

    # 計算設定
    max_group_order: int = 64
    default_tolerance: float = 1e-9
    precision_bits: int = 53
    default_seed: int = 0

    # ロギング設定
    log_level: str = "WARNING"
    log_format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    # 環境設定
    environment: str = "development"
    debug: bool = False

    # 検証スイートの標本数
    limits: ComputationLimits = field(default_factory=ComputationLimits)

    @classmethod
    def from_env(cls) -> 'AppConfig':
        """環境変数から設定を読み込み"""
        defaults = ComputationLimits()
        limits = ComputationLimits(
            cyclo_pairs=int(os.getenv("TAMEARITH_CYCLO_PAIRS", str(defaults.cyclo_pairs))),
            reciprocity_triples=int(os.getenv("TAMEARITH_RECIPROCITY_TRIPLES", str(defaults.reciprocity_triples))),
            basis_perturbations=int(os.getenv("TAMEARITH_BASIS_PERTURBATIONS", str(defaults.basis_perturbations))),
            quasi_iso_pairs=int(os.getenv("TAMEARITH_QUASI_ISO_PAIRS", str(defaults.quasi_iso_pairs))),
            isometry_vectors=int(os.getenv("TAMEARITH_ISOMETRY_VECTORS", str(defaults.isometry_vectors))),
        )

        return cls(
            corpus_dir=os.getenv("TAMEARITH_CORPUS", BUNDLED_CORPUS),
            max_group_order=int(os.getenv("TAMEARITH_MAX_GROUP_ORDER", "64")),
            default_tolerance=float(os.getenv("TAMEARITH_TOLERANCE", "1e-9")),
            precision_bits=int(os.getenv("TAMEARITH_PRECISION_BITS", "53")),
            default_seed=int(os.getenv("TAMEARITH_SEED", "0")),
            log_level=os.getenv("LOG_LEVEL", "WARNING"),
            log_format=os.getenv("LOG_FORMAT", "%(asctime)s - %(name)s - %(levelname)s - %(message)s"),
            environment=os.getenv("ENVIRONMENT", "development"),
            debug=os.getenv("DEBUG", "false").lower() == "true",
            limits=limits
        )

    def setup_logging(self):
        """ロギング設定を適用（標準エラーへ出力し、標準出力のレポートを汚さない）"""
        logging.basicConfig(
            level=getattr(logging, "DEBUG" if self.debug else self.log_level.upper()),
            format=self.log_format,
            force=True
        )


class ConfigManager:
    """設定管理クラス"""

    _instance: Optional['ConfigManager'] = None
    _config: Optional[AppConfig] = None

    def __new__(cls) -> 'ConfigManager':
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def get_config(self) -> AppConfig:
        """設定を取得（シングルトン）"""
        if self._config is None:
            self._config = AppConfig.from_env()
        return self._config

    def reload_config(self) -> AppConfig:
        """設定を再読み込み"""
        self._config = AppConfig.from_env()
        return self._config

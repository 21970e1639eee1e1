"""モジュールごとの性質検査スイート"""
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from ...domain.entities import CheckResult, ComputationLimits
from ...domain.groupchar import CharacterTable
from ...domain.tamefield import TameFieldDescriptor
from ...infrastructure.corpus_repository import CorpusRepository

logger = logging.getLogger(__name__)


@dataclass
class SuiteContext:
    """スイートの実行環境（スイート間で可変状態を共有しない）"""
    repository: CorpusRepository
    seed: int
    tolerance: float
    limits: ComputationLimits

    def tables(self) -> List[Tuple[str, CharacterTable]]:
        """コーパスの全ての群の指標表"""
        return [(e.id, self.repository.load_group(e.id)) for e in self.repository.get_all_entries("groups")]

    def fields(self) -> List[Tuple[str, TameFieldDescriptor]]:
        return [(e.id, self.repository.load_field(e.id)) for e in self.repository.get_all_entries("fields")]


@dataclass
class PropertyRun:
    """1 つの性質を標本ごとに確かめ、最初の反例を再現情報として残す"""
    name: str
    suite: str
    seed: int
    samples: int = 0
    failure: Optional[Dict[str, Any]] = None
    detail: Dict[str, Any] = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return self.failure is not None

    def record(self, ok: bool, **case) -> bool:
        self.samples += 1
        if not ok and self.failure is None:
            self.failure = {"suite": self.suite, "seed": self.seed, "sample": self.samples - 1, "case": case}
            logger.warning(f"{self.suite}.{self.name}: 反例が見つかりました: {case}")
        return ok

    def result(self) -> CheckResult:
        name = f"{self.suite}.{self.name}"
        if self.failure is not None:
            return CheckResult.failed(name, reproduction=self.failure, samples=self.samples, **self.detail)
        return CheckResult.ok(name, samples=self.samples, **self.detail)


SuiteRunner = Callable[[SuiteContext], List[CheckResult]]


def suite_registry() -> Dict[str, SuiteRunner]:
    from . import classrep, cyclo, groupchar, metcomplex, tamefield

    return {
        "groupchar": groupchar.run,
        "cyclo": cyclo.run,
        "classrep": classrep.run,
        "metcomplex": metcomplex.run,
        "tamefield": tamefield.run,
    }

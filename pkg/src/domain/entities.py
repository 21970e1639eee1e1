from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence


REPORT_SCHEMA = "tamearith.report/1"

COMMANDS = ("chars", "class-complex", "field-report", "verify", "corpus")
SUITES = ("groupchar", "cyclo", "classrep", "metcomplex", "tamefield")
FORMATS = ("json", "text")

EXIT_PASS = 0
EXIT_FAILURE = 1
EXIT_INPUT_ERROR = 2


@dataclass
class ComputationLimits:
    """検証スイートごとの標本数"""
    cyclo_pairs: int = 1000
    reciprocity_triples: int = 100
    basis_perturbations: int = 200
    quasi_iso_pairs: int = 50
    isometry_vectors: int = 500

    def __post_init__(self):
        for name, value in self.__dict__.items():
            if value < 0:
                raise ValueError(f"{name} は 0 以上である必要があります: {value}")


@dataclass
class RunConfig:
    """1 回のコマンド実行の設定"""
    command: str
    inputs: List[str] = field(default_factory=list)
    seed: int = 0
    tolerance: float = 1e-9
    precision_bits: int = 53
    output_path: Optional[str] = None
    format: str = "json"
    suite: str = "all"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"未知のコマンドです: {self.command}")
        if not self.tolerance > 0:
            raise ValueError(f"許容誤差は正である必要があります: {self.tolerance}")
        if self.precision_bits < 24:
            raise ValueError(f"精度は 24 ビット以上を指定してください: {self.precision_bits}")
        if self.format not in FORMATS:
            raise ValueError(f"出力形式は json か text です: {self.format}")
        if self.suite != "all" and self.suite not in SUITES:
            raise ValueError(f"未知のスイートです: {self.suite}")

    @property
    def suites(self) -> Sequence[str]:
        return SUITES if self.suite == "all" else (self.suite,)

    def echo(self) -> Dict[str, Any]:
        """レポートに残すコマンドの写し（出力先は含めない）"""
        data = {
            "command": self.command,
            "inputs": list(self.inputs),
            "seed": self.seed,
            "tolerance": self.tolerance,
            "precision_bits": self.precision_bits,
        }
        if self.command == "verify":
            data["suite"] = self.suite
        return data


@dataclass
class CheckResult:
    """1 つの性質の検査結果"""
    name: str
    passed: bool
    detail: Dict[str, Any] = field(default_factory=dict)
    reproduction: Optional[Dict[str, Any]] = None

    @classmethod
    def ok(cls, name: str, **detail) -> "CheckResult":
        return cls(name=name, passed=True, detail=detail)

    @classmethod
    def failed(cls, name: str, reproduction: Optional[Dict[str, Any]] = None, **detail) -> "CheckResult":
        return cls(name=name, passed=False, detail=detail, reproduction=reproduction)

    def to_dict(self) -> Dict[str, Any]:
        data = {"name": self.name, "passed": self.passed}
        if self.detail:
            data["detail"] = self.detail
        if self.reproduction is not None:
            data["reproduction"] = self.reproduction
        return data


@dataclass
class Report:
    """コマンドのレポート（JSON は入力と seed に対して決定的）"""
    command: Dict[str, Any]
    items: List[Dict[str, Any]] = field(default_factory=list)
    checks: List[CheckResult] = field(default_factory=list)
    elapsed_seconds: Optional[float] = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self) -> Optional[CheckResult]:
        return next((c for c in self.checks if not c.passed), None)

    def to_dict(self) -> Dict[str, Any]:
        """時間計測は含めない"""
        data = {
            "schema": REPORT_SCHEMA,
            "command": self.command,
            "items": self.items,
            "checks": [c.to_dict() for c in self.checks],
            "passed": self.passed,
        }
        failure = self.first_failure
        if failure is not None:
            data["first_failure"] = failure.to_dict()
        return data


@dataclass
class CommandResult:
    """ユースケースの処理結果"""
    success: bool
    report: Optional[Report] = None
    error_message: Optional[str] = None
    exit_code: int = EXIT_PASS
    suggested_precision_bits: Optional[int] = None

    @classmethod
    def success_result(cls, report: Report) -> "CommandResult":
        """成功結果を作成（検査が 1 つでも落ちれば終了コード 1）"""
        return cls(
            success=True,
            report=report,
            exit_code=EXIT_PASS if report.passed else EXIT_FAILURE,
        )

    @classmethod
    def error_result(
        cls,
        error_message: str,
        exit_code: int = EXIT_INPUT_ERROR,
        suggested_precision_bits: Optional[int] = None,
    ) -> "CommandResult":
        """エラー結果を作成"""
        return cls(
            success=False,
            error_message=error_message,
            exit_code=exit_code,
            suggested_precision_bits=suggested_precision_bits,
        )


@dataclass
class CorpusEntry:
    """コーパスに同梱された記述子"""
    id: str
    kind: str
    name: str
    filename: str
    description: str
    is_active: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "kind": self.kind,
            "name": self.name,
            "filename": self.filename,
            "description": self.description,
        }


@dataclass
class ComplexDescriptor:
    """計量付き複体の記述子を読み込んだもの

    rescale があれば p_φ = α(φ)^{φ(1)}·q_φ と組にして比べる。
    """
    complex: Any
    table: Any
    forms: Any = None
    metric: str = "hermitian"
    q_bases: Dict[int, Any] = field(default_factory=dict)
    p_bases: Dict[int, Dict[int, Any]] = field(default_factory=dict)
    primes: List[int] = field(default_factory=list)
    rescale: Optional[List[float]] = None

    def __post_init__(self):
        if self.metric not in ("hermitian", "acyclic"):
            raise ValueError(f"metric は hermitian か acyclic です: {self.metric}")
        if self.rescale is not None:
            if len(self.rescale) != len(self.table):
                raise ValueError(f"rescale の長さ {len(self.rescale)} が既約指標の数 {len(self.table)} と一致しません")
            if any(not a > 0 for a in self.rescale):
                raise ValueError("rescale の値は正である必要があります")

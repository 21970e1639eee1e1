"""コマンドライン: 引数の解析とコントローラーへの振り分け"""
import argparse
import logging
import sys
from typing import Optional, Sequence

from ..domain.cycloarith import set_working_precision
from ..domain.entities import EXIT_INPUT_ERROR, FORMATS, SUITES
from ..infrastructure.config import AppConfig

logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    """使い方の誤りを終了コード 2 の例外にする"""

    def error(self, message):
        raise argparse.ArgumentError(None, message)


def build_parser(config: AppConfig) -> argparse.ArgumentParser:
    """サブコマンドと共通フラグを持つパーサーを作成（既定値は設定から取る）"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=config.default_seed, help="乱数の種（検証スイートの入力生成のみ）")
    common.add_argument("--tol", type=float, default=config.default_tolerance, help="アルキメデス的な相対許容誤差")
    common.add_argument("--precision-bits", type=int, default=config.precision_bits, help="区間演算の作業精度")
    common.add_argument("--format", choices=FORMATS, default="json", help="出力形式")
    common.add_argument("--out", default=None, help="出力先（省略時は標準出力）")

    parser = _Parser(prog="tamearith", description="tame Galois 拡大の算術類を計算・検証する")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    commands.required = True

    chars = commands.add_parser("chars", parents=[common], help="群の記述子から指標表を作る")
    chars.add_argument("inputs", nargs="*", metavar="GROUP", help="群の記述子（パスか corpus の id）")

    complex_ = commands.add_parser("class-complex", parents=[common], help="計量付き複体の算術類を計算する")
    complex_.add_argument("inputs", nargs="*", metavar="COMPLEX", help="複体の記述子")

    field = commands.add_parser("field-report", parents=[common], help="体の記述子から θ を含むレポートを作る")
    field.add_argument("inputs", nargs="*", metavar="FIELD", help="体の記述子")

    verify = commands.add_parser("verify", parents=[common], help="検証スイートを実行する")
    verify.add_argument("--suite", choices=SUITES + ("all",), default="all", help="実行するスイート")
    verify.add_argument("inputs", nargs="*", help=argparse.SUPPRESS)

    corpus = commands.add_parser("corpus", parents=[common], help="同梱記述子を一覧する")
    corpus.add_argument("inputs", nargs="*", metavar="KIND", help="groups, fields, complexes のいずれか")

    return parser


def run(argv: Optional[Sequence[str]] = None, container=None) -> int:
    """引数を解析して 1 コマンドを実行し、終了コードを返す"""
    if container is None:
        from ..infrastructure.container import container
    config = container.get_config()
    config.setup_logging()

    parser = build_parser(config)
    try:
        args = parser.parse_args(argv)
    except argparse.ArgumentError as e:
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    # 作業精度は起動時に一度だけ決める
    try:
        set_working_precision(args.precision_bits)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    return container.get_controller(args.command).handle(args)

import sys
from typing import Optional, Sequence

from src.infrastructure.container import container
from src.presentation.cli import build_parser, run


def create_cli():
    """CLI のパーサーを作成"""
    return build_parser(container.get_config())


def main(argv: Optional[Sequence[str]] = None) -> int:
    """エントリーポイント

    Args:
        argv: コマンドライン引数（省略時は sys.argv）

    Returns:
        int: 終了コード（0 合格、1 検証の失敗、2 入力の誤り）
    """
    return run(argv, container)


if __name__ == "__main__":
    sys.exit(main())

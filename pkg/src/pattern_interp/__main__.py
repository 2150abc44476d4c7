#!/usr/bin/env python3
"""
Entry point for running pattern_interp as a module
This allows running: python -m pattern_interp
"""

import sys

import click

try:
    from .cli import app
    from .core.types import ExitCode
except ImportError:
    from pattern_interp.cli import app
    from pattern_interp.core.types import ExitCode


def main() -> None:
    """控制台脚本入口；用法错误统一映射为退出码 1"""
    try:
        code = app(standalone_mode=False)
    except click.UsageError as e:
        e.show()
        sys.exit(int(ExitCode.USAGE))
    except click.Abort:
        sys.exit(int(ExitCode.USAGE))
    except click.ClickException as e:
        e.show()
        sys.exit(e.exit_code)
    sys.exit(code if isinstance(code, int) else int(ExitCode.SUCCESS))


if __name__ == "__main__":
    main()

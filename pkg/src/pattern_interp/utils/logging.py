"""
结构化日志

所有日志写 stderr；stdout 只留给结果数据。
片段处理期间通过 segment_context 绑定 segment/index，退火、穷举等下游日志自动带上。
"""

from __future__ import annotations

import logging
import sys
from contextlib import AbstractContextManager
from typing import Any

import structlog

_QUIET_LIBRARIES = ("graphviz", "asyncio")


def configure_logging(verbose: bool = False, *, colors: bool | None = None) -> None:
    level = logging.DEBUG if verbose else logging.INFO
    if colors is None:
        colors = sys.stderr.isatty()

    logging.basicConfig(level=level, format="%(message)s", stream=sys.stderr, force=True)
    for name in _QUIET_LIBRARIES:
        logging.getLogger(name).setLevel(logging.WARNING)

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso", utc=True),
            structlog.processors.format_exc_info,
            structlog.dev.ConsoleRenderer(colors=colors, sort_keys=False),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(level),
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=False,
    )


def segment_context(segment: str, index: int) -> AbstractContextManager[Any]:
    """在当前（工作线程）上下文中绑定片段信息，退出时解绑"""
    return structlog.contextvars.bound_contextvars(segment=segment, index=index)


def get_logger(name: str | None = None) -> Any:
    return structlog.get_logger(name) if name else structlog.get_logger()

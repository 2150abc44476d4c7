"""
工具模块
日志配置与随机数派生
"""

from .logging import configure_logging, get_logger, segment_context
from .seeding import derive_rng, derive_seed

__all__ = ['configure_logging', 'get_logger', 'segment_context', 'derive_rng', 'derive_seed']

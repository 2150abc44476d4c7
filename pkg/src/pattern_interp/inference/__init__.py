"""推断模块：提议函数、模拟退火与穷举搜索"""

from .annealing import (
    AnnealResult,
    Interpretation,
    MoveRecord,
    SearchTrace,
    TopNCollector,
    anneal,
    metropolis_accept,
)
from .hypotheses import dump_hypotheses, load_hypotheses, load_hypotheses_file, parse_hypotheses
from .linking import SearchContext, build_configuration
from .oracle import oracle_search, search_space_size
from .proposals import global_proposal, initialize, local_proposal

__all__ = [
    "AnnealResult",
    "Interpretation",
    "MoveRecord",
    "SearchTrace",
    "TopNCollector",
    "anneal",
    "metropolis_accept",
    "dump_hypotheses",
    "load_hypotheses",
    "load_hypotheses_file",
    "parse_hypotheses",
    "SearchContext",
    "build_configuration",
    "oracle_search",
    "search_space_size",
    "global_proposal",
    "initialize",
    "local_proposal",
]

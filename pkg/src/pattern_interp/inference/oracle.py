"""
穷举搜索（验证用）

枚举全部有据标签赋值，以及每个无直接断言的有序对在候选池中
大小不超过 cues_per_pair 的全部线索子集，返回全局能量排序。
"""

from __future__ import annotations

import itertools
import math
from typing import Dict, List, Sequence, Tuple

from .annealing import Interpretation, TopNCollector
from .linking import SearchContext, build_configuration, ordered_pairs
from ..config.defaults import ORACLE_DEFAULT_BUDGET
from ..core.errors import SearchBudgetExceeded
from ..core.models.hypothesis import Candidate, HypothesisSet
from ..core.models.params import InferenceParams
from ..knowledge.graph import KnowledgeGraph
from ..utils.logging import get_logger

logger = get_logger(__name__)

PairChoices = List[Tuple[Tuple[int, int], List[Tuple[str, ...]]]]


def _cue_subsets(pool: Sequence[str], max_size: int) -> List[Tuple[str, ...]]:
    subsets: List[Tuple[str, ...]] = []
    for size in range(min(max_size, len(pool)) + 1):
        subsets.extend(itertools.combinations(pool, size))
    return subsets


def _pair_choices(ctx: SearchContext, assignment: Sequence[Candidate]) -> PairChoices:
    choices: PairChoices = []
    for i, j in ordered_pairs(range(len(assignment))):
        start, end = assignment[i].concept, assignment[j].concept
        if ctx.kg.has_assertion(start, end):
            continue
        pool = [cue.concept for cue in ctx.cue_pool(start, end)]
        choices.append(((i, j), _cue_subsets(pool, ctx.params.cues_per_pair)))
    return choices


def search_space_size(h: HypothesisSet, kg: KnowledgeGraph, p: InferenceParams) -> int:
    """穷举状态数：Σ_赋值 Π_有序对 (线索子集数)"""
    ctx = SearchContext(h, kg, p)
    total = 0
    for assignment in itertools.product(*(slot.candidates for slot in h.slots)):
        total += math.prod(len(subsets) for _, subsets in _pair_choices(ctx, assignment))
    return total


def oracle_search(
    h: HypothesisSet,
    kg: KnowledgeGraph,
    p: InferenceParams,
    budget: int = ORACLE_DEFAULT_BUDGET,
) -> List[Interpretation]:
    """返回全部结构不同配置的能量排序

    Raises:
        SearchBudgetExceeded: 状态数超过 budget（携带实际状态数）
    """
    if budget < 1:
        raise ValueError("budget 必须 >= 1")
    size = search_space_size(h, kg, p)
    if size > budget:
        logger.warning("oracle_refused", segment=h.segment, size=size, budget=budget)
        raise SearchBudgetExceeded(size, budget)

    ctx = SearchContext(h, kg, p)
    collector = TopNCollector(size)
    for assignment in itertools.product(*(slot.candidates for slot in h.slots)):
        choices = _pair_choices(ctx, assignment)
        pairs = [pair for pair, _ in choices]
        for combination in itertools.product(*(subsets for _, subsets in choices)):
            cue_choices: Dict[Tuple[int, int], Sequence[str]] = dict(zip(pairs, combination))
            collector.offer(build_configuration(ctx, list(assignment), cue_choices))
    ranked = collector.ranked()
    logger.debug("oracle_finished", segment=h.segment, states=size, distinct=len(ranked))
    return ranked

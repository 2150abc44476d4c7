"""
提议函数

- initialize：全局初始化，每个槽位取最高置信候选并连接
- local_proposal：交换变换，按能量最小替换一个有据生成器
- global_proposal：线索结构跳转（插入 / 删除 / 重连）
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .linking import (
    SearchContext,
    attach_and_link,
    build_configuration,
    cue_pair,
    detach_grounded,
    insert_cue,
    ordered_pairs,
)
from ..core.errors import InterpretationError
from ..core.models.hypothesis import Candidate, HypothesisSet
from ..core.models.params import InferenceParams
from ..core.types import MoveKind
from ..knowledge.graph import KnowledgeGraph
from ..pattern.configuration import Configuration
from ..utils.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True, slots=True)
class Proposal:
    configuration: Configuration
    kind: MoveKind


def initialize(
    h: HypothesisSet,
    kg: KnowledgeGraph,
    p: InferenceParams,
    ctx: Optional[SearchContext] = None,
) -> Configuration:
    """每个槽位的最高置信候选 + 特征生成器；有序对之间直接键或线索"""
    for slot in h.slots:
        if not slot.candidates:
            raise InterpretationError(f"槽位 {slot.id} 没有候选")
    ctx = ctx or SearchContext(h, kg, p)
    c = build_configuration(ctx, [slot.top for slot in h.slots])
    logger.debug("configuration_initialized", segment=h.segment, sites=len(c), energy=c.total_energy)
    return c


def local_proposal(
    c: Configuration,
    h: HypothesisSet,
    kg: KnowledgeGraph,
    m: int,
    rng: np.random.Generator,
    ctx: Optional[SearchContext] = None,
) -> Configuration:
    """交换变换

    1. 均匀选取一个有据生成器 g
    2. 从 g 所在槽位中不放回均匀抽取至多 m 个其它候选
    3. 移除 g、其支持键及与 g 成键的线索
    4. 逐个候选试探性挂入并连接，计算能量
    5. 提交能量最小者；并列时取置信度高者，再按概念名
    槽位只有一个候选时返回 c 本身。
    """
    return _local(c, h, kg, m, rng, ctx).configuration


def _local(
    c: Configuration,
    h: HypothesisSet,
    kg: KnowledgeGraph,
    m: int,
    rng: np.random.Generator,
    ctx: Optional[SearchContext],
) -> Proposal:
    if m < 1:
        raise ValueError("m 必须 >= 1")
    grounded = c.grounded_sites()
    if not grounded:
        return Proposal(c, MoveKind.IDENTITY)
    site = grounded[int(rng.integers(len(grounded)))]
    current = c.generator(site)
    slot = h.slot(current.slot_id or "")
    alternatives = [cand for cand in slot.candidates if cand.concept != current.concept]
    if not alternatives:
        return Proposal(c, MoveKind.IDENTITY)
    picks = rng.choice(len(alternatives), size=min(m, len(alternatives)), replace=False)
    chosen = [alternatives[int(i)] for i in sorted(picks)]

    ctx = ctx or SearchContext(h, kg, InferenceParams(m_swap=m))
    work = c.copy()
    detach_grounded(work, site)

    best: Optional[Tuple[Tuple[float, float, str], Candidate]] = None
    for candidate in chosen:
        added = attach_and_link(work, ctx, slot, candidate)
        key = (work.total_energy, -candidate.score, candidate.concept)
        if best is None or key < best[0]:
            best = (key, candidate)
        for added_site in reversed(added):
            work.remove_generator(added_site)

    assert best is not None
    attach_and_link(work, ctx, slot, best[1])
    return Proposal(work, MoveKind.LOCAL)


def _insert_options(c: Configuration, ctx: SearchContext) -> List[Tuple[int, int, List[str]]]:
    """(out 有据站点, in 有据站点, 可插入的线索概念)"""
    if ctx.params.cues_per_pair == 0:
        return []
    options = []
    for out_site, in_site in ordered_pairs(c.grounded_sites()):
        start, end = c.generator(out_site).concept, c.generator(in_site).concept
        if ctx.kg.has_assertion(start, end):
            continue
        present = c.cues_between(out_site, in_site)
        if len(present) >= ctx.params.cues_per_pair:
            continue
        present_concepts = {c.generator(s).concept for s in present}
        absent = [cue.concept for cue in ctx.cue_pool(start, end) if cue.concept not in present_concepts]
        if absent:
            options.append((out_site, in_site, absent))
    return options


def _rewire_options(c: Configuration, ctx: SearchContext) -> List[Tuple[int, str]]:
    """(线索站点, 替换概念)：同一对候选池中排在当前线索之后的第一个缺席线索（循环）"""
    options = []
    for cue_site in c.cue_sites():
        pair = cue_pair(c, cue_site)
        if pair is None:
            continue
        start, end = c.generator(pair[0]).concept, c.generator(pair[1]).concept
        pool = [cue.concept for cue in ctx.cue_pool(start, end)]
        concept = c.generator(cue_site).concept
        present = {c.generator(s).concept for s in c.cues_between(*pair)}
        if concept not in pool:
            continue
        index = pool.index(concept)
        rotated = pool[index + 1:] + pool[:index]
        replacement = next((other for other in rotated if other not in present), None)
        if replacement is not None:
            options.append((cue_site, replacement))
    return options


def global_proposal(
    c: Configuration,
    kg: KnowledgeGraph,
    p: InferenceParams,
    rng: np.random.Generator,
    ctx: Optional[SearchContext] = None,
) -> Configuration:
    """结构跳转：在可用的插入 / 删除 / 重连中均匀选择一种；都不可用时为恒等移动"""
    return _global(c, rng, ctx or SearchContext(None, kg, p)).configuration


def _global(c: Configuration, rng: np.random.Generator, ctx: SearchContext) -> Proposal:
    inserts = _insert_options(c, ctx)
    deletes = c.cue_sites()
    rewires = _rewire_options(c, ctx)
    moves = [
        kind
        for kind, options in (
            (MoveKind.GLOBAL_INSERT, inserts),
            (MoveKind.GLOBAL_DELETE, deletes),
            (MoveKind.GLOBAL_REWIRE, rewires),
        )
        if options
    ]
    if not moves:
        return Proposal(c, MoveKind.IDENTITY)

    kind = moves[int(rng.integers(len(moves)))]
    work = c.copy()
    if kind is MoveKind.GLOBAL_INSERT:
        out_site, in_site, absent = inserts[int(rng.integers(len(inserts)))]
        concept = absent[int(rng.integers(len(absent)))]
        if insert_cue(work, ctx, out_site, in_site, concept) is None:
            return Proposal(c, MoveKind.IDENTITY)
    elif kind is MoveKind.GLOBAL_DELETE:
        work.remove_generator(deletes[int(rng.integers(len(deletes)))])
    else:
        cue_site, replacement = rewires[int(rng.integers(len(rewires)))]
        out_site, in_site = cue_pair(work, cue_site) or (None, None)
        work.remove_generator(cue_site)
        if out_site is None or in_site is None or insert_cue(work, ctx, out_site, in_site, replacement) is None:
            return Proposal(c, MoveKind.IDENTITY)
    return Proposal(work, kind)

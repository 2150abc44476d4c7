"""
配置构建积木

把有据生成器挂入配置、在有据概念对之间闭合直接语义键或插入上下文线索。
initialize / 局部提议 / 全局提议 / 穷举搜索共用这些操作，保证同一结构得到同一能量。
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..config.defaults import FEATURE_TAG_BY_ROLE
from ..core.models.hypothesis import Candidate, HypothesisSet, Slot
from ..core.models.params import InferenceParams
from ..core.types import BondDirection, DirectionFilter, GeneratorKind
from ..knowledge.graph import Cue, KnowledgeGraph
from ..pattern.configuration import Configuration, ConfigurationCostModel, Edge
from ..pattern.generators import GeneratorSpace, values_match
from ..utils.logging import get_logger

logger = get_logger(__name__)


@dataclass
class SearchContext:
    """单个片段搜索期间共享的只读输入与缓存"""
    hypothesis: Optional[HypothesisSet]
    kg: KnowledgeGraph
    params: InferenceParams
    space: GeneratorSpace = field(init=False)
    cost: ConfigurationCostModel = field(init=False)
    _pools: Dict[Tuple[str, str], List[Cue]] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self) -> None:
        self.space = GeneratorSpace(self.kg, self.params.max_semantic_bonds, self.params.wildcard_related_to)
        self.cost = ConfigurationCostModel(self.params.k_cost, self.params.q_count_in_bonds)

    def empty_configuration(self) -> Configuration:
        return Configuration(
            self.kg,
            self.cost,
            wildcard_related_to=self.params.wildcard_related_to,
            slot_order=[slot.id for slot in self.hypothesis.slots] if self.hypothesis else (),
        )

    def cue_pool(self, start: str, end: str) -> List[Cue]:
        """有序概念对的线索候选池（find_cues 前 cue_candidates 个）"""
        key = (start, end)
        pool = self._pools.get(key)
        if pool is None:
            pool = self.kg.find_cues(start, end, self.params.cue_candidates, strict=self.params.cue_strict)
            self._pools[key] = pool
        return pool


def _best_closure(c: Configuration, out_site: int, in_site: int) -> Optional[Tuple[int, int]]:
    """out_site -> in_site 之间最强的可闭合语义键对 (out 坐标, in 坐标)

    只考虑知识图谱中 out 概念到 in 概念确有断言的关系，按 |weight| 降序、关系名升序。
    """
    out_g = c.generator(out_site)
    in_g = c.generator(in_site)
    relations = c.kg.relations_between(out_g.concept, in_g.concept)
    if not relations:
        return None
    rank = {rel: i for i, (rel, _) in enumerate(sorted(relations, key=lambda r: (-abs(r[1]), r[0])))}
    best: Optional[Tuple[int, int, int]] = None
    for out_b in out_g.open_bonds(DirectionFilter.OUT):
        if out_b.is_support:
            continue
        for in_b in in_g.open_bonds(DirectionFilter.IN):
            if in_b.is_support or not values_match(out_b.value, in_b.value, c.wildcard_related_to):
                continue
            positions = [rank[v] for v in (out_b.value, in_b.value) if v in rank]
            if not positions:
                continue
            position = min(positions)
            candidate = (position, out_b.coordinate, in_b.coordinate)
            if best is None or candidate < best:
                best = candidate
    return None if best is None else (best[1], best[2])


def link_direct(c: Configuration, out_site: int, in_site: int) -> Optional[Edge]:
    """闭合 out_site -> in_site 最强的直接语义键"""
    closure = _best_closure(c, out_site, in_site)
    if closure is None:
        return None
    return c.connect((out_site, closure[0]), (in_site, closure[1]))


def insert_cue(
    c: Configuration,
    ctx: SearchContext,
    out_site: int,
    in_site: int,
    cue_concept: str,
) -> Optional[int]:
    """插入线索生成器并闭合两条腿 out_site -> cue -> in_site；任一腿无法闭合则跳过"""
    start, end = c.generator(out_site).concept, c.generator(in_site).concept
    cue = ctx.space.make_ungrounded(cue_concept, cue_query=(start, end))
    if cue.is_degenerate:
        logger.debug("cue_skipped", cue=cue_concept, reason="degenerate")
        return None
    site = c.add_generator(cue)
    first = _best_closure(c, out_site, site)
    second = _best_closure(c, site, in_site)
    if first is None or second is None:
        c.remove_generator(site)
        logger.debug("cue_skipped", cue=cue_concept, start=start, end=end, reason="no_closable_bond")
        return None
    c.connect((out_site, first[0]), (site, first[1]))
    c.connect((site, second[0]), (in_site, second[1]))
    return site


def link_pair(
    c: Configuration,
    ctx: SearchContext,
    out_site: int,
    in_site: int,
    cue_choice: Optional[Sequence[str]] = None,
) -> List[int]:
    """连接一个有序有据对：有直接断言则闭合直接键，否则插入线索

    cue_choice 为 None 时按候选池排序插入，直到 cues_per_pair 个成功；
    否则只尝试给定的线索。返回新增的线索站点。
    """
    start, end = c.generator(out_site).concept, c.generator(in_site).concept
    if ctx.kg.has_assertion(start, end):
        # 有直接断言的对不插入线索，即使对应关系的键被上限截掉或已占用
        if link_direct(c, out_site, in_site) is None:
            logger.debug("link_skipped", start=start, end=end, reason="no_open_matching_bond")
        return []
    limit = ctx.params.cues_per_pair
    if limit == 0:
        return []
    concepts: Iterable[str] = [cue.concept for cue in ctx.cue_pool(start, end)] if cue_choice is None else cue_choice
    inserted: List[int] = []
    for concept in concepts:
        if len(inserted) >= limit:
            break
        site = insert_cue(c, ctx, out_site, in_site, concept)
        if site is not None:
            inserted.append(site)
    return inserted


def attach_grounded(c: Configuration, ctx: SearchContext, slot: Slot, candidate: Candidate) -> List[int]:
    """加入有据生成器及其特征生成器并闭合支持键；返回 [有据站点, 特征站点]"""
    grounded = ctx.space.make_grounded(candidate.concept, slot.id, candidate.score, role=slot.role)
    feature = ctx.space.make_feature(FEATURE_TAG_BY_ROLE[slot.role.value])
    g_site = c.add_generator(grounded)
    f_site = c.add_generator(feature)
    c.connect((f_site, 0), (g_site, 0))
    return [g_site, f_site]


def attach_and_link(c: Configuration, ctx: SearchContext, slot: Slot, candidate: Candidate) -> List[int]:
    """挂入候选并与其余有据生成器按两个方向连接；返回全部新增站点"""
    added = attach_grounded(c, ctx, slot, candidate)
    site = added[0]
    for other in c.grounded_sites():
        if other == site:
            continue
        added.extend(link_pair(c, ctx, site, other))
        added.extend(link_pair(c, ctx, other, site))
    return added


def detach_grounded(c: Configuration, site: int) -> None:
    """移除有据生成器、其特征生成器以及所有与之成键的线索"""
    for peer in c.peers(site):
        kind = c.generator(peer).kind
        if kind is GeneratorKind.FEATURE or kind is GeneratorKind.UNGROUNDED:
            c.remove_generator(peer)
    c.remove_generator(site)


def ordered_pairs(sites: Sequence[int]) -> List[Tuple[int, int]]:
    return [(a, b) for a in sites for b in sites if a != b]


def build_configuration(
    ctx: SearchContext,
    assignment: Sequence[Candidate],
    cue_choices: Optional[Dict[Tuple[int, int], Sequence[str]]] = None,
) -> Configuration:
    """按槽位顺序的候选赋值构建配置

    cue_choices 以槽位序号对 (i, j) 为键；缺省时使用候选池默认线索。
    """
    if ctx.hypothesis is None:
        raise ValueError("构建配置需要假设集合")
    c = ctx.empty_configuration()
    sites = [attach_grounded(c, ctx, slot, candidate)[0] for slot, candidate in zip(ctx.hypothesis.slots, assignment)]
    for i, j in ordered_pairs(range(len(sites))):
        choice = None if cue_choices is None else cue_choices.get((i, j), ())
        link_pair(c, ctx, sites[i], sites[j], choice)
    return c


def cue_pair(c: Configuration, cue_site: int) -> Optional[Tuple[int, int]]:
    """线索所桥接的有序有据对 (out 有据站点, in 有据站点)"""
    g = c.generator(cue_site)
    sources = [b.peer[0] for b in g.bonds if b.peer is not None and b.direction is BondDirection.IN]
    targets = [b.peer[0] for b in g.bonds if b.peer is not None and b.direction is BondDirection.OUT]
    grounded = set(c.sites_of_kind(GeneratorKind.GROUNDED))
    sources = [s for s in sources if s in grounded]
    targets = [t for t in targets if t in grounded]
    if not sources or not targets:
        return None
    return (min(sources), min(targets))

"""
生成器空间

三类生成器（特征 / 有据概念 / 无据上下文）及其键结构。
键的开闭状态只能由 configuration 模块修改。
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..config.defaults import GENERATOR_DEFAULT_MAX_SEMANTIC_BONDS, GENERATOR_DEFAULT_WILDCARD_RELATED_TO
from ..core.errors import GeneratorConstructionError
from ..core.types import (
    FEATURE_BOND_VALUE,
    WILDCARD_RELATION,
    BondDirection,
    DirectionFilter,
    GeneratorKind,
    NeighborDirection,
    SlotRole,
    bounded_tanh,
    normalize_concept,
)
from ..knowledge.graph import KnowledgeGraph

# 进程内唯一的生成器实例 id
_generator_ids = itertools.count(1)

# (site, coordinate)
BondRef = Tuple[int, int]


@dataclass(slots=True)
class Bond:
    """β^j_dir(g)：坐标、方向、键值与对端"""
    coordinate: int
    direction: BondDirection
    value: str
    peer: Optional[BondRef] = None

    @property
    def is_open(self) -> bool:
        return self.peer is None

    @property
    def is_support(self) -> bool:
        return self.value == FEATURE_BOND_VALUE

    def copy(self) -> Bond:
        return Bond(self.coordinate, self.direction, self.value, self.peer)


@dataclass(slots=True)
class Generator:
    kind: GeneratorKind
    concept: str
    bonds: List[Bond]
    id: int = field(default_factory=lambda: next(_generator_ids))
    # 来源信息
    slot_id: Optional[str] = None
    role: Optional[SlotRole] = None
    confidence: Optional[float] = None
    feature_tag: Optional[str] = None
    cue_query: Optional[Tuple[str, str]] = None

    @property
    def arity(self) -> int:
        return len(self.bonds)

    @property
    def is_degenerate(self) -> bool:
        """没有任何键，永远无法闭合"""
        return not self.bonds

    def bond(self, coordinate: int) -> Optional[Bond]:
        if 0 <= coordinate < len(self.bonds):
            return self.bonds[coordinate]
        return None

    def open_bonds(self, direction: DirectionFilter = DirectionFilter.ANY) -> List[Bond]:
        return [b for b in self.bonds if b.peer is None and direction.matches(b.direction)]

    def closed_bonds(self) -> List[Bond]:
        return [b for b in self.bonds if b.peer is not None]

    def copy(self) -> Generator:
        """复制（保留实例 id 与键状态）"""
        return Generator(
            kind=self.kind,
            concept=self.concept,
            bonds=[b.copy() for b in self.bonds],
            id=self.id,
            slot_id=self.slot_id,
            role=self.role,
            confidence=self.confidence,
            feature_tag=self.feature_tag,
            cue_query=self.cue_query,
        )

    def __str__(self) -> str:
        return f"{self.kind.value}:{self.concept}#{self.id}"


def values_match(out_value: str, in_value: str, wildcard_related_to: bool = False) -> bool:
    """闭合规则：键值完全相等；开启通配时 RelatedTo 匹配任意语义关系"""
    if out_value == in_value:
        return True
    if not wildcard_related_to or FEATURE_BOND_VALUE in (out_value, in_value):
        return False
    return WILDCARD_RELATION in (out_value, in_value)


def support_bond_energy(confidence: float) -> float:
    """a_sup = tanh(f)，严格落在 (-1, 1) 内"""
    return bounded_tanh(confidence)


def _strongest_relations(kg: KnowledgeGraph, concept: str, direction: NeighborDirection, cap: int) -> List[str]:
    """按最强 |weight| 截取 cap 个不同关系，返回按关系名排序的列表"""
    strongest: Dict[str, float] = {}
    for neighbor in kg.neighbors(concept, direction):
        strongest[neighbor.relation] = max(strongest.get(neighbor.relation, 0.0), abs(neighbor.weight))
    kept = sorted(strongest, key=lambda rel: (-strongest[rel], rel))[:cap]
    return sorted(kept)


class GeneratorSpace:
    """按概念缓存键布局的生成器工厂"""

    def __init__(
        self,
        kg: KnowledgeGraph,
        max_semantic_bonds: int = GENERATOR_DEFAULT_MAX_SEMANTIC_BONDS,
        wildcard_related_to: bool = GENERATOR_DEFAULT_WILDCARD_RELATED_TO,
    ):
        if max_semantic_bonds < 1:
            raise GeneratorConstructionError("max_semantic_bonds 必须 >= 1")
        self.kg = kg
        self.max_semantic_bonds = max_semantic_bonds
        self.wildcard_related_to = wildcard_related_to
        self._layouts: Dict[str, Tuple[Tuple[str, ...], Tuple[str, ...]]] = {}

    def layout(self, concept: str) -> Tuple[Tuple[str, ...], Tuple[str, ...]]:
        """(入键关系, 出键关系)"""
        cached = self._layouts.get(concept)
        if cached is None:
            cached = (
                tuple(_strongest_relations(self.kg, concept, NeighborDirection.IN, self.max_semantic_bonds)),
                tuple(_strongest_relations(self.kg, concept, NeighborDirection.OUT, self.max_semantic_bonds)),
            )
            self._layouts[concept] = cached
        return cached

    def _semantic_bonds(self, concept: str, start: int) -> List[Bond]:
        in_relations, out_relations = self.layout(concept)
        bonds = [Bond(start + i, BondDirection.IN, rel) for i, rel in enumerate(in_relations)]
        offset = start + len(bonds)
        bonds.extend(Bond(offset + i, BondDirection.OUT, rel) for i, rel in enumerate(out_relations))
        return bonds

    @staticmethod
    def make_feature(tag: str) -> Generator:
        tag = tag.strip()
        if not tag:
            raise GeneratorConstructionError("特征标签不能为空")
        return Generator(
            kind=GeneratorKind.FEATURE,
            concept=normalize_concept(tag),
            bonds=[Bond(0, BondDirection.OUT, FEATURE_BOND_VALUE)],
            feature_tag=tag,
        )

    def make_grounded(
        self,
        concept: str,
        slot: str,
        confidence: float,
        *,
        role: Optional[SlotRole] = None,
    ) -> Generator:
        if not math.isfinite(confidence):
            raise GeneratorConstructionError(f"置信度必须有限: {confidence}")
        concept = normalize_concept(concept)
        if not concept:
            raise GeneratorConstructionError("概念不能为空")
        bonds = [Bond(0, BondDirection.IN, FEATURE_BOND_VALUE)]
        bonds.extend(self._semantic_bonds(concept, 1))
        return Generator(
            kind=GeneratorKind.GROUNDED,
            concept=concept,
            bonds=bonds,
            slot_id=slot,
            role=role,
            confidence=confidence,
        )

    def make_ungrounded(self, concept: str, *, cue_query: Optional[Tuple[str, str]] = None) -> Generator:
        concept = normalize_concept(concept)
        if not concept:
            raise GeneratorConstructionError("概念不能为空")
        return Generator(
            kind=GeneratorKind.UNGROUNDED,
            concept=concept,
            bonds=self._semantic_bonds(concept, 0),
            cue_query=cue_query,
        )


def make_feature(tag: str) -> Generator:
    return GeneratorSpace.make_feature(tag)


def make_grounded(
    concept: str,
    kg: KnowledgeGraph,
    slot: str,
    confidence: float,
    max_semantic_bonds: int = GENERATOR_DEFAULT_MAX_SEMANTIC_BONDS,
    *,
    role: Optional[SlotRole] = None,
) -> Generator:
    return GeneratorSpace(kg, max_semantic_bonds).make_grounded(concept, slot, confidence, role=role)


def make_ungrounded(
    concept: str,
    kg: KnowledgeGraph,
    max_semantic_bonds: int = GENERATOR_DEFAULT_MAX_SEMANTIC_BONDS,
    *,
    cue_query: Optional[Tuple[str, str]] = None,
) -> Generator:
    return GeneratorSpace(kg, max_semantic_bonds).make_ungrounded(concept, cue_query=cue_query)


def open_bonds(g: Generator, direction: DirectionFilter = DirectionFilter.ANY) -> List[Bond]:
    return g.open_bonds(DirectionFilter(direction))


def kind_violations(g: Generator) -> List[str]:
    """生成器种类约束检查"""
    violations: List[str] = []
    feature_in = [b for b in g.bonds if b.is_support and b.direction is BondDirection.IN]
    feature_out = [b for b in g.bonds if b.is_support and b.direction is BondDirection.OUT]
    coordinates = [b.coordinate for b in g.bonds]
    if coordinates != list(range(len(g.bonds))):
        violations.append(f"{g}: 键坐标必须为 0..{len(g.bonds) - 1}")
    if g.kind is GeneratorKind.FEATURE:
        if len(g.bonds) != 1 or len(feature_out) != 1:
            violations.append(f"{g}: 特征生成器必须只有一个 feature 出键")
    elif g.kind is GeneratorKind.GROUNDED:
        if len(feature_in) != 1 or feature_out:
            violations.append(f"{g}: 有据生成器必须恰有一个 feature 入键")
    elif feature_in or feature_out:
        violations.append(f"{g}: 无据生成器不能带 feature 键")
    return violations

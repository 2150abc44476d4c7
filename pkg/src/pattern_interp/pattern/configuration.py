"""
配置（填充后的连接图）

Configuration 是单一所有者的可变状态：站点 -> 生成器、闭合键对集合，
以及增量维护的能量缓存（支持键之和、语义键之和、计入 Q 的开放键数）。
模块级 connect / disconnect 先复制再修改，返回新配置。
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx

from .generators import Bond, BondRef, Generator, kind_violations, support_bond_energy, values_match
from ..config.defaults import ENERGY_CHECK_TOLERANCE, INFERENCE_DEFAULT_K_COST
from ..core.errors import (
    BondKindError,
    BondNotOpenError,
    BondValueMismatchError,
    InterpretationError,
    UnknownEdgeError,
    UnknownSiteError,
)
from ..core.models.energy import EnergyBreakdown
from ..core.types import FEATURE_BOND_VALUE, BondDirection, GeneratorKind
from ..knowledge.graph import KnowledgeGraph


@dataclass(frozen=True, slots=True)
class ConfigurationCostModel:
    """Q(c) = k × 无据生成器的开放出键数（可选计入开放入键）"""
    k: float = INFERENCE_DEFAULT_K_COST
    count_in_bonds: bool = False

    def counts(self, direction: BondDirection) -> bool:
        return direction is BondDirection.OUT or self.count_in_bonds


@dataclass(frozen=True, slots=True)
class Edge:
    """闭合键对：out 端 -> in 端"""
    out_site: int
    out_coordinate: int
    in_site: int
    in_coordinate: int
    value: str
    energy: float

    @property
    def is_support(self) -> bool:
        return self.value == FEATURE_BOND_VALUE

    @property
    def out_ref(self) -> BondRef:
        return (self.out_site, self.out_coordinate)

    @property
    def in_ref(self) -> BondRef:
        return (self.in_site, self.in_coordinate)


class Configuration:
    """c = σ(g_1, ..., g_n)"""

    __slots__ = (
        "kg", "cost", "wildcard_related_to", "slot_order",
        "_sites", "_edges", "_next_site", "_support_sum", "_semantic_sum", "_open_cost_bonds",
    )

    def __init__(
        self,
        kg: KnowledgeGraph,
        cost: ConfigurationCostModel = ConfigurationCostModel(),
        *,
        wildcard_related_to: bool = False,
        slot_order: Sequence[str] = (),
    ):
        self.kg = kg
        self.cost = cost
        self.wildcard_related_to = wildcard_related_to
        self.slot_order: Tuple[str, ...] = tuple(slot_order)
        self._sites: Dict[int, Generator] = {}
        # 以两个端点分别索引同一条边
        self._edges: Dict[BondRef, Edge] = {}
        self._next_site = 0
        self._support_sum = 0.0
        self._semantic_sum = 0.0
        self._open_cost_bonds = 0

    # ---- 复制与访问 ----

    def copy(self) -> Configuration:
        other = Configuration.__new__(Configuration)
        other.kg = self.kg
        other.cost = self.cost
        other.wildcard_related_to = self.wildcard_related_to
        other.slot_order = self.slot_order
        other._sites = {site: g.copy() for site, g in self._sites.items()}
        other._edges = dict(self._edges)
        other._next_site = self._next_site
        other._support_sum = self._support_sum
        other._semantic_sum = self._semantic_sum
        other._open_cost_bonds = self._open_cost_bonds
        return other

    def __len__(self) -> int:
        return len(self._sites)

    def __contains__(self, site: object) -> bool:
        return site in self._sites

    @property
    def sites(self) -> List[int]:
        return list(self._sites)

    def generator(self, site: int) -> Generator:
        try:
            return self._sites[site]
        except KeyError:
            raise UnknownSiteError(site) from None

    def items(self) -> Iterator[Tuple[int, Generator]]:
        return iter(self._sites.items())

    def edges(self) -> List[Edge]:
        """全部闭合键对（按 out 端排序）"""
        unique = {edge for edge in self._edges.values()}
        return sorted(unique, key=lambda e: (e.out_site, e.out_coordinate, e.in_site, e.in_coordinate))

    def edge_at(self, ref: BondRef) -> Optional[Edge]:
        return self._edges.get(ref)

    def sites_of_kind(self, kind: GeneratorKind) -> List[int]:
        return [site for site, g in self._sites.items() if g.kind is kind]

    def grounded_sites(self) -> List[int]:
        """有据生成器站点，按槽位顺序"""
        order = {slot: i for i, slot in enumerate(self.slot_order)}
        grounded = self.sites_of_kind(GeneratorKind.GROUNDED)
        return sorted(grounded, key=lambda s: (order.get(self._sites[s].slot_id or "", len(order)), s))

    def cue_sites(self) -> List[int]:
        return self.sites_of_kind(GeneratorKind.UNGROUNDED)

    def grounded_by_slot(self) -> Dict[str, int]:
        return {self._sites[s].slot_id or "": s for s in self.grounded_sites()}

    def peers(self, site: int) -> List[int]:
        """与站点直接成键的其它站点（按站点号去重排序）"""
        g = self.generator(site)
        return sorted({b.peer[0] for b in g.bonds if b.peer is not None})

    def cues_between(self, out_site: int, in_site: int) -> List[int]:
        """桥接 out_site -> cue -> in_site 的线索站点"""
        bridging = []
        for cue in self.cue_sites():
            g = self._sites[cue]
            has_in = any(
                b.peer is not None and b.direction is BondDirection.IN and b.peer[0] == out_site for b in g.bonds
            )
            has_out = any(
                b.peer is not None and b.direction is BondDirection.OUT and b.peer[0] == in_site for b in g.bonds
            )
            if has_in and has_out:
                bridging.append(cue)
        return bridging

    def closed_energy(self, site: int) -> float:
        """站点全部闭合键的能量之和"""
        g = self.generator(site)
        total = 0.0
        for b in g.bonds:
            if b.peer is not None:
                edge = self._edges.get((site, b.coordinate))
                if edge is not None:
                    total += edge.energy
        return total

    # ---- 变更操作 ----

    def _cost_delta(self, g: Generator, direction: BondDirection) -> int:
        if g.kind is GeneratorKind.UNGROUNDED and self.cost.counts(direction):
            return 1
        return 0

    def add_generator(self, g: Generator) -> int:
        """加入一个全部键开放的生成器，返回站点号"""
        if g.closed_bonds():
            raise BondKindError(f"{g} 加入配置时必须全部键开放")
        site = self._next_site
        self._next_site += 1
        self._sites[site] = g
        for b in g.bonds:
            self._open_cost_bonds += self._cost_delta(g, b.direction)
        return site

    def remove_generator(self, site: int) -> Generator:
        """断开站点全部键并移除；返回被移除的生成器（键全部开放）"""
        g = self.generator(site)
        for b in g.bonds:
            if b.peer is not None:
                self.disconnect(self._edges[(site, b.coordinate)])
        for b in g.bonds:
            self._open_cost_bonds -= self._cost_delta(g, b.direction)
        del self._sites[site]
        return g

    def _bond(self, ref: BondRef) -> Tuple[Generator, Bond]:
        site, coordinate = ref
        g = self.generator(site)
        b = g.bond(coordinate)
        if b is None:
            raise BondKindError(f"站点 {site} 没有坐标 {coordinate} 的键")
        return g, b

    def edge_energy(self, out_g: Generator, in_g: Generator, value: str) -> float:
        """支持键 tanh(f)；语义键 tanh(φ(out, in))"""
        if value == FEATURE_BOND_VALUE:
            return support_bond_energy(in_g.confidence or 0.0)
        return self.kg.semantic_bond_energy(out_g.concept, in_g.concept)

    def check_closable(self, out_ref: BondRef, in_ref: BondRef) -> None:
        """connect 的前置条件；不满足时抛出对应 BondError"""
        out_g, out_b = self._bond(out_ref)
        in_g, in_b = self._bond(in_ref)
        if out_ref[0] == in_ref[0]:
            raise BondKindError(f"站点 {out_ref[0]} 不能与自身成键")
        if out_b.direction is not BondDirection.OUT or in_b.direction is not BondDirection.IN:
            raise BondKindError(
                f"键方向非法: {out_b.direction.value} -> {in_b.direction.value}（需要 out -> in）"
            )
        if not out_b.is_open:
            raise BondNotOpenError(*out_ref)
        if not in_b.is_open:
            raise BondNotOpenError(*in_ref)
        if not values_match(out_b.value, in_b.value, self.wildcard_related_to):
            raise BondValueMismatchError(out_b.value, in_b.value)
        problem = _kind_problem(out_g, in_g, out_b.value)
        if problem:
            raise BondKindError(problem)

    def connect(self, out_ref: BondRef, in_ref: BondRef) -> Edge:
        """闭合 out 键与 in 键，增量更新能量缓存"""
        self.check_closable(out_ref, in_ref)
        out_g, out_b = self._bond(out_ref)
        in_g, in_b = self._bond(in_ref)
        edge = Edge(out_ref[0], out_ref[1], in_ref[0], in_ref[1], out_b.value, self.edge_energy(out_g, in_g, out_b.value))
        out_b.peer = in_ref
        in_b.peer = out_ref
        self._edges[out_ref] = edge
        self._edges[in_ref] = edge
        if edge.is_support:
            self._support_sum += edge.energy
        else:
            self._semantic_sum += edge.energy
        self._open_cost_bonds -= self._cost_delta(out_g, BondDirection.OUT) + self._cost_delta(in_g, BondDirection.IN)
        return edge

    def disconnect(self, edge: Edge) -> None:
        if self._edges.get(edge.out_ref) != edge or self._edges.get(edge.in_ref) != edge:
            raise UnknownEdgeError(edge)
        out_g, out_b = self._bond(edge.out_ref)
        in_g, in_b = self._bond(edge.in_ref)
        out_b.peer = None
        in_b.peer = None
        del self._edges[edge.out_ref]
        del self._edges[edge.in_ref]
        if edge.is_support:
            self._support_sum -= edge.energy
        else:
            self._semantic_sum -= edge.energy
        self._open_cost_bonds += self._cost_delta(out_g, BondDirection.OUT) + self._cost_delta(in_g, BondDirection.IN)

    # ---- 能量 ----

    @property
    def open_cost_bonds(self) -> int:
        return self._open_cost_bonds

    def cost_q(self, k: Optional[float] = None) -> float:
        return (self.cost.k if k is None else k) * self._open_cost_bonds

    def energy(self, k: Optional[float] = None) -> EnergyBreakdown:
        """缓存的能量分解"""
        return EnergyBreakdown.from_sums(self._support_sum, self._semantic_sum, self.cost_q(k))

    @property
    def total_energy(self) -> float:
        return -(self._support_sum + self._semantic_sum) + self.cost.k * self._open_cost_bonds

    def recompute_energy(self, k: Optional[float] = None) -> EnergyBreakdown:
        """按规范边顺序从头计算能量（不读缓存）"""
        support: List[float] = []
        semantic: List[float] = []
        for edge in self.edges():
            out_g = self._sites.get(edge.out_site)
            in_g = self._sites.get(edge.in_site)
            if out_g is None or in_g is None:
                continue
            energy = self.edge_energy(out_g, in_g, edge.value)
            (support if edge.is_support else semantic).append(energy)
        open_count = 0
        for g in self._sites.values():
            if g.kind is GeneratorKind.UNGROUNDED:
                open_count += sum(1 for b in g.bonds if b.peer is None and self.cost.counts(b.direction))
        # fsum 与求和顺序无关
        return EnergyBreakdown.from_sums(
            math.fsum(support), math.fsum(semantic), (self.cost.k if k is None else k) * open_count
        )

    def assert_consistent(self, tolerance: float = ENERGY_CHECK_TOLERANCE) -> None:
        """调试检查：缓存能量必须与重新计算一致"""
        cached, fresh = self.energy(), self.recompute_energy()
        if not cached.is_close(fresh, tolerance):
            raise InterpretationError(f"能量缓存不一致: cached={cached.total} recomputed={fresh.total}")

    # ---- 结构 ----

    def structure_key(self) -> Tuple[Tuple[Tuple[str, str], ...], Tuple[str, ...]]:
        """(槽位有据概念, 线索概念多重集)，用作 top-N 去重标识"""
        grounded = tuple((self._sites[s].slot_id or "", self._sites[s].concept) for s in self.grounded_sites())
        cues = tuple(sorted(self._sites[s].concept for s in self.cue_sites()))
        return grounded, cues

    def assignment(self) -> Dict[str, str]:
        return {slot: self._sites[site].concept for slot, site in self.grounded_by_slot().items()}

    def concept_graph(self) -> nx.Graph:
        """概念生成器及语义键构成的无向图"""
        graph = nx.Graph()
        for site, g in self._sites.items():
            if g.kind.is_concept:
                graph.add_node(site)
        for edge in self.edges():
            if not edge.is_support:
                graph.add_edge(edge.out_site, edge.in_site)
        return graph

    def connected_grounded(self) -> bool:
        """所有有据生成器是否经直接键或线索连通"""
        grounded = self.grounded_sites()
        if len(grounded) <= 1:
            return True
        component = nx.node_connected_component(self.concept_graph(), grounded[0])
        return all(site in component for site in grounded)

    def validate(self, require_connected: bool = False) -> List[str]:
        """返回违反的不变式列表；空列表表示合法"""
        violations: List[str] = []
        for g in self._sites.values():
            violations.extend(kind_violations(g))

        seen: Set[Edge] = set()
        for ref, edge in sorted(self._edges.items()):
            if ref not in (edge.out_ref, edge.in_ref):
                violations.append(f"边索引错位: {ref} -> {edge}")
                continue
            if edge in seen:
                continue
            seen.add(edge)
            violations.extend(self._edge_violations(edge))

        for site, g in self._sites.items():
            for b in g.bonds:
                if b.peer is not None and (site, b.coordinate) not in self._edges:
                    violations.append(f"站点 {site} 坐标 {b.coordinate} 声称闭合但没有对应的边")

        if not violations:
            cached, fresh = self.energy(), self.recompute_energy()
            if not cached.is_close(fresh):
                violations.append(f"能量缓存不一致: cached={cached.total} recomputed={fresh.total}")
        if require_connected and not self.connected_grounded():
            violations.append("有据生成器之间不连通")
        return violations

    def _edge_violations(self, edge: Edge) -> List[str]:
        out_g = self._sites.get(edge.out_site)
        in_g = self._sites.get(edge.in_site)
        if out_g is None or in_g is None:
            return [f"边引用了不存在的站点: {edge}"]
        out_b = out_g.bond(edge.out_coordinate)
        in_b = in_g.bond(edge.in_coordinate)
        if out_b is None or in_b is None:
            return [f"边引用了不存在的键坐标: {edge}"]
        if out_b.direction is not BondDirection.OUT or in_b.direction is not BondDirection.IN:
            return [f"方向违规: {out_b.direction.value} -> {in_b.direction.value} ({edge})"]

        problems: List[str] = []
        if out_b.peer != edge.in_ref:
            problems.append(f"互闭合违规: 站点 {edge.out_site} 坐标 {edge.out_coordinate} 未指向 {edge.in_ref}")
        if in_b.peer != edge.out_ref:
            problems.append(f"互闭合违规: 站点 {edge.in_site} 坐标 {edge.in_coordinate} 未指向 {edge.out_ref}")
        if edge.value != out_b.value or not values_match(out_b.value, in_b.value, self.wildcard_related_to):
            problems.append(f"键值违规: {out_b.value} -> {in_b.value} ({edge})")
        kind_problem = _kind_problem(out_g, in_g, out_b.value)
        if kind_problem:
            problems.append(f"种类违规: {kind_problem}")
        expected = self.edge_energy(out_g, in_g, out_b.value)
        if not math.isclose(edge.energy, expected, rel_tol=0.0, abs_tol=ENERGY_CHECK_TOLERANCE):
            problems.append(f"边能量违规: {edge.energy} != {expected}")
        return problems

    def __repr__(self) -> str:
        return f"Configuration(sites={len(self._sites)}, edges={len(self.edges())}, energy={self.total_energy:.6f})"


def _kind_problem(out_g: Generator, in_g: Generator, value: str) -> Optional[str]:
    if value == FEATURE_BOND_VALUE:
        if out_g.kind is not GeneratorKind.FEATURE or in_g.kind is not GeneratorKind.GROUNDED:
            return f"feature 键只能连接 特征 -> 有据 ({out_g.kind.value} -> {in_g.kind.value})"
        return None
    if not (out_g.kind.is_concept and in_g.kind.is_concept):
        return f"语义键只能连接概念生成器 ({out_g.kind.value} -> {in_g.kind.value})"
    return None


# ---- 函数式接口：返回新配置 ----

def connect(c: Configuration, out_ref: BondRef, in_ref: BondRef) -> Configuration:
    result = c.copy()
    result.connect(out_ref, in_ref)
    return result


def disconnect(c: Configuration, edge: Edge) -> Configuration:
    result = c.copy()
    result.disconnect(edge)
    return result


def cost_q(c: Configuration, k: Optional[float] = None) -> float:
    return c.cost_q(k)


def energy(c: Configuration, k: Optional[float] = None) -> EnergyBreakdown:
    return c.energy(k)


def probability_weight(c: Configuration, k: Optional[float] = None) -> float:
    """exp(-E(c))，未归一化"""
    return math.exp(-c.energy(k).total)


def validate(c: Configuration, require_connected: bool = False) -> List[str]:
    return c.validate(require_connected)


def _anchored_cues(c: Configuration) -> List[Tuple[int, int]]:
    """(锚点序号, 线索站点)：线索挂在它连接的最后一个有据概念上，无锚点的排在最后

    同一锚点内按闭合键能量降序、概念名升序。
    """
    position = {site: i for i, site in enumerate(c.grounded_sites())}
    anchored = []
    for cue in c.cue_sites():
        anchors = [position[p] for p in c.peers(cue) if p in position]
        anchored.append((max(anchors) if anchors else len(position), cue))
    anchored.sort(key=lambda item: (item[0], -c.closed_energy(item[1]), c.generator(item[1]).concept, item[1]))
    return anchored


def semantic_content(c: Configuration) -> List[Tuple[str, GeneratorKind]]:
    """有据概念按槽位顺序，每个后跟其挂接的线索概念"""
    grounded = c.grounded_sites()
    anchored = _anchored_cues(c)
    content: List[Tuple[str, GeneratorKind]] = []
    for index, site in enumerate(grounded):
        content.append((c.generator(site).concept, GeneratorKind.GROUNDED))
        content.extend((c.generator(cue).concept, GeneratorKind.UNGROUNDED) for anchor, cue in anchored if anchor == index)
    content.extend(
        (c.generator(cue).concept, GeneratorKind.UNGROUNDED) for anchor, cue in anchored if anchor == len(grounded)
    )
    return content


def format_semantic_content(content: Sequence[Tuple[str, GeneratorKind]]) -> str:
    """"pour oil (liquid) (fuel) (black)" 形式"""
    words = []
    for concept, kind in content:
        text = concept.replace("_", " ")
        words.append(f"({text})" if kind is GeneratorKind.UNGROUNDED else text)
    return " ".join(words)


def canonical_sites(c: Configuration) -> List[int]:
    """规范站点顺序：有据（槽位顺序）各自后跟其特征生成器，再接语义内容顺序的线索，最后其余站点"""
    order: List[int] = []
    for site in c.grounded_sites():
        order.append(site)
        order.extend(p for p in c.peers(site) if c.generator(p).kind is GeneratorKind.FEATURE)
    order.extend(cue for _, cue in _anchored_cues(c))
    placed = set(order)
    rest = [s for s in c.sites if s not in placed]
    rest.sort(key=lambda s: (c.generator(s).kind.value, c.generator(s).concept, s))
    return order + rest

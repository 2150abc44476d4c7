"""
常识知识图谱

以 networkx.MultiDiGraph 存储二元有向断言：边 key 为关系名，weight 为带符号权重。
加载完成后冻结，之后只做只读查询，可在多个工作线程间共享。
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Set, Tuple

import networkx as nx

from ..core.models.knowledge import Assertion, LoadReport
from ..core.types import KGFormat, NeighborDirection, bounded_tanh, normalize_concept


@dataclass(frozen=True, slots=True)
class Neighbor:
    relation: str
    other: str
    weight: float


@dataclass(frozen=True, slots=True)
class Cue:
    """上下文线索 g_k 及其排序分数 tanh φ(i,k) + tanh φ(k,j)"""
    concept: str
    score: float


class KnowledgeGraph:
    """带权、带类型的有向多重图"""

    def __init__(self, graph: nx.MultiDiGraph, report: LoadReport):
        self._graph = nx.freeze(graph)
        self._report = report
        # φ(i, j) 预计算：同一有序对上绝对值最大的权重
        self._strength: Dict[Tuple[str, str], float] = {}
        for start, end in set(graph.edges()):
            self._strength[(start, end)] = _strongest(graph[start][end])

    @classmethod
    def from_assertions(
        cls,
        assertions: Iterable[Assertion],
        *,
        symmetrize: Iterable[str] = (),
        source_format: KGFormat = KGFormat.TSV,
        skipped_lines: int = 0,
    ) -> KnowledgeGraph:
        """由断言序列构建；重复三元组保留 |weight| 最大者"""
        graph = nx.MultiDiGraph()
        duplicates = 0
        symmetric: Set[str] = set(symmetrize)
        mirrored = 0

        def insert(assertion: Assertion) -> bool:
            existing = graph.get_edge_data(assertion.start, assertion.end, key=assertion.relation)
            if existing is None:
                graph.add_edge(assertion.start, assertion.end, key=assertion.relation, weight=assertion.weight)
                return True
            if abs(assertion.weight) > abs(existing["weight"]):
                existing["weight"] = assertion.weight
            return False

        collected = list(assertions)
        for assertion in collected:
            if not insert(assertion):
                duplicates += 1
        for assertion in collected:
            if assertion.relation in symmetric and assertion.start != assertion.end:
                if insert(assertion.reversed()):
                    mirrored += 1

        report = LoadReport(
            source_format=source_format,
            assertions=graph.number_of_edges(),
            concepts=graph.number_of_nodes(),
            duplicates_merged=duplicates,
            skipped_lines=skipped_lines,
            symmetrized=mirrored,
        )
        return cls(graph, report)

    # ---- 基本访问 ----

    @property
    def load_report(self) -> LoadReport:
        return self._report

    @property
    def graph(self) -> nx.MultiDiGraph:
        """冻结的底层图（只读）"""
        return self._graph

    def __contains__(self, concept: object) -> bool:
        return isinstance(concept, str) and normalize_concept(concept) in self._graph

    def __len__(self) -> int:
        return self._graph.number_of_edges()

    def concepts(self) -> List[str]:
        return sorted(self._graph.nodes)

    def assertions(self) -> Iterator[Assertion]:
        """按 (start, end, relation) 排序遍历全部断言"""
        edges = sorted(self._graph.edges(keys=True, data="weight"), key=lambda e: (e[0], e[1], e[2]))
        for start, end, relation, weight in edges:
            yield Assertion(relation=relation, start=start, end=end, weight=weight)

    # ---- 断言查询（参数先规范化）----

    def has_assertion(self, g_i: str, g_j: str) -> bool:
        return (normalize_concept(g_i), normalize_concept(g_j)) in self._strength

    def relations_between(self, g_i: str, g_j: str) -> List[Tuple[str, float]]:
        """g_i -> g_j 的全部 (relation, weight)，按关系名排序"""
        g_i, g_j = normalize_concept(g_i), normalize_concept(g_j)
        if (g_i, g_j) not in self._strength:
            return []
        return sorted((relation, data["weight"]) for relation, data in self._graph[g_i][g_j].items())

    def assertion_strength(self, g_i: str, g_j: str) -> float:
        """φ(g_i, g_j)：方向敏感，无断言时为 0.0"""
        return self._strength.get((normalize_concept(g_i), normalize_concept(g_j)), 0.0)

    def semantic_bond_energy(self, g_i: str, g_j: str) -> float:
        return bounded_tanh(self.assertion_strength(g_i, g_j))

    def neighbors(self, g: str, direction: NeighborDirection = NeighborDirection.OUT) -> List[Neighbor]:
        """按 (relation, other) 排序的邻居；未知概念返回空列表"""
        g = normalize_concept(g)
        if g not in self._graph:
            return []
        if direction is NeighborDirection.OUT:
            edges = ((rel, end, w) for _, end, rel, w in self._graph.out_edges(g, keys=True, data="weight"))
        else:
            edges = ((rel, start, w) for start, _, rel, w in self._graph.in_edges(g, keys=True, data="weight"))
        return [Neighbor(rel, other, w) for rel, other, w in sorted(edges, key=lambda e: (e[0], e[1]))]

    def find_cues(self, g_i: str, g_j: str, limit: int, *, strict: bool = False) -> List[Cue]:
        """上下文线索：¬(g_i R g_j) ∧ g_i R g_k ∧ g_k R g_j

        strict=True 时反向直接断言 g_j -> g_i 同样使谓词失败。
        """
        if limit < 1:
            raise ValueError("limit 必须 >= 1")
        g_i, g_j = normalize_concept(g_i), normalize_concept(g_j)
        if self.has_assertion(g_i, g_j) or (strict and self.has_assertion(g_j, g_i)):
            return []
        if g_i not in self._graph or g_j not in self._graph:
            return []
        bridges = set(self._graph.successors(g_i)) & set(self._graph.predecessors(g_j))
        bridges.discard(g_i)
        bridges.discard(g_j)
        ranked = sorted(
            (
                Cue(k, self.semantic_bond_energy(g_i, k) + self.semantic_bond_energy(k, g_j))
                for k in bridges
            ),
            key=lambda cue: (-cue.score, cue.concept),
        )
        return ranked[:limit]

    def __repr__(self) -> str:
        return f"KnowledgeGraph(assertions={self._report.assertions}, concepts={self._report.concepts})"


def _strongest(relations: Dict[str, Dict[str, float]]) -> float:
    """绝对值最大的权重（保留符号）；绝对值相同时取关系名最小者"""
    relation = min(relations, key=lambda rel: (-abs(relations[rel]["weight"]), rel))
    return relations[relation]["weight"]


def semantic_bond_energy(kg: KnowledgeGraph, g_i: str, g_j: str) -> float:
    return kg.semantic_bond_energy(g_i, g_j)


def assertion_strength(kg: KnowledgeGraph, g_i: str, g_j: str) -> float:
    return kg.assertion_strength(g_i, g_j)


def find_cues(kg: KnowledgeGraph, g_i: str, g_j: str, limit: int, *, strict: bool = False) -> List[Cue]:
    return kg.find_cues(g_i, g_j, limit, strict=strict)


def neighbors(kg: KnowledgeGraph, g: str, direction: NeighborDirection = NeighborDirection.OUT) -> List[Neighbor]:
    return kg.neighbors(g, direction)

"""
配置序列化：规范 JSON 与 DOT

JSON 使用规范站点编号；能量取重新计算值（精确求和，与边顺序无关），
因此结构相同的配置输出逐字节相同。
"""

from __future__ import annotations

from typing import Dict

import graphviz

from ..core.models.documents import (
    BondDocument,
    ConfigurationDocument,
    EdgeDocument,
    GeneratorDocument,
)
from ..core.types import GeneratorKind
from ..knowledge.graph import KnowledgeGraph
from ..pattern.configuration import Configuration, ConfigurationCostModel, canonical_sites
from ..pattern.generators import Bond, Generator
from .renderer import concept_words

_NODE_STYLE: Dict[GeneratorKind, Dict[str, str]] = {
    GeneratorKind.GROUNDED: {"shape": "box", "style": "rounded,filled", "fillcolor": "lightblue"},
    GeneratorKind.UNGROUNDED: {"shape": "ellipse", "style": "dashed", "color": "red"},
    GeneratorKind.FEATURE: {"shape": "diamond", "style": "filled", "fillcolor": "lightyellow"},
}


def to_document(c: Configuration) -> ConfigurationDocument:
    order = canonical_sites(c)
    index = {site: i for i, site in enumerate(order)}
    generators = []
    for site in order:
        g = c.generator(site)
        generators.append(GeneratorDocument(
            site=index[site],
            kind=g.kind,
            concept=g.concept,
            slot=g.slot_id,
            role=g.role,
            confidence=g.confidence,
            feature_tag=g.feature_tag,
            cue_query=g.cue_query,
            bonds=[BondDocument(coordinate=b.coordinate, direction=b.direction, value=b.value) for b in g.bonds],
        ))
    edges = sorted(
        (
            EdgeDocument(
                out_site=index[e.out_site],
                out_coordinate=e.out_coordinate,
                in_site=index[e.in_site],
                in_coordinate=e.in_coordinate,
                value=e.value,
                bond_type="support" if e.is_support else "semantic",
                energy=e.energy,
            )
            for e in c.edges()
        ),
        key=lambda e: (e.out_site, e.out_coordinate, e.in_site, e.in_coordinate),
    )
    return ConfigurationDocument(
        generators=generators,
        edges=edges,
        energy=c.recompute_energy(),
        k_cost=c.cost.k,
        q_count_in_bonds=c.cost.count_in_bonds,
        wildcard_related_to=c.wildcard_related_to,
    )


def to_json(c: Configuration) -> str:
    return to_document(c).model_dump_json()


def from_document(doc: ConfigurationDocument, kg: KnowledgeGraph) -> Configuration:
    """由文档重建配置；边按文档逐条 connect，能量由 kg 重新计算"""
    slot_order = [g.slot for g in doc.generators if g.kind is GeneratorKind.GROUNDED and g.slot]
    c = Configuration(
        kg,
        ConfigurationCostModel(doc.k_cost, doc.q_count_in_bonds),
        wildcard_related_to=doc.wildcard_related_to,
        slot_order=slot_order,
    )
    sites: Dict[int, int] = {}
    for g_doc in doc.generators:
        generator = Generator(
            kind=g_doc.kind,
            concept=g_doc.concept,
            bonds=[Bond(b.coordinate, b.direction, b.value) for b in g_doc.bonds],
            slot_id=g_doc.slot,
            role=g_doc.role,
            confidence=g_doc.confidence,
            feature_tag=g_doc.feature_tag,
            cue_query=g_doc.cue_query,
        )
        sites[g_doc.site] = c.add_generator(generator)
    for e in doc.edges:
        c.connect((sites[e.out_site], e.out_coordinate), (sites[e.in_site], e.in_coordinate))
    return c


def parse_json(text: str, kg: KnowledgeGraph) -> Configuration:
    return from_document(ConfigurationDocument.model_validate_json(text), kg)


def _node_label(g: Generator) -> str:
    if g.kind is GeneratorKind.FEATURE:
        return g.feature_tag or g.concept
    text = concept_words(g.concept)
    if g.kind is GeneratorKind.GROUNDED and g.confidence is not None:
        return f"{text}\\nf={g.confidence:.3f}"
    return text


def to_dot(c: Configuration, name: str = "configuration") -> str:
    """有据 / 无据 / 特征三种节点样式；边标注键值与能量"""
    dot = graphviz.Digraph(name=name, comment="pattern configuration")
    dot.attr(rankdir="LR", bgcolor="white", fontname="Arial")
    order = canonical_sites(c)
    index = {site: i for i, site in enumerate(order)}
    for site in order:
        g = c.generator(site)
        dot.node(f"s{index[site]}", _node_label(g), **_NODE_STYLE[g.kind])
    edges = sorted(c.edges(), key=lambda e: (index[e.out_site], e.out_coordinate, index[e.in_site], e.in_coordinate))
    for e in edges:
        dot.edge(
            f"s{index[e.out_site]}",
            f"s{index[e.in_site]}",
            label=f"{e.value}\\n{e.energy:.4f}",
            style="dashed" if e.is_support else "solid",
        )
    return dot.source

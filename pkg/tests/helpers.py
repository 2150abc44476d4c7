"""测试用的小型知识图谱与假设构造函数"""

from __future__ import annotations

from typing import Iterable, List, Sequence, Tuple

from pattern_interp.core.models import Assertion, HypothesisSet
from pattern_interp.core.types import BondDirection
from pattern_interp.inference.hypotheses import dump_hypotheses
from pattern_interp.knowledge.graph import KnowledgeGraph
from pattern_interp.knowledge.loaders import dump_tsv
from pattern_interp.pattern.generators import Generator

Row = Tuple[str, str, str, float]
SlotSpec = Tuple[str, str, Sequence[Tuple[str, float]]]

# egg IsA food 是课本式的例子
EGG_ROWS: List[Row] = [
    ("IsA", "egg", "food", 1.0),
    ("AtLocation", "egg", "plate", 0.8),
    ("AtLocation", "food", "plate", 0.6),
]

# pour 与 oil 之间没有直接断言，liquid / fuel / black 是三个线索
POUR_ROWS: List[Row] = [
    ("RelatedTo", "pour", "liquid", 1.5),
    ("RelatedTo", "liquid", "oil", 1.2),
    ("UsedFor", "pour", "fuel", 0.9),
    ("HasA", "fuel", "oil", 1.1),
    ("HasProperty", "pour", "black", 0.5),
    ("PartOf", "black", "oil", 0.7),
]

KITCHEN_ROWS: List[Row] = POUR_ROWS + [
    ("CapableOf", "man", "slice", 1.2),
    ("CapableOf", "woman", "stir", 1.0),
    ("CapableOf", "man", "pour", 0.7),
    ("RelatedTo", "slice", "onion", 0.8),
    ("RelatedTo", "stir", "soup", 1.1),
    ("IsA", "soup", "liquid", 0.9),
    ("IsA", "egg", "food", 1.0),
    ("AtLocation", "food", "kitchen", 0.6),
    ("AtLocation", "man", "kitchen", 0.5),
    ("HasA", "kitchen", "oil", 0.4),
    ("Antonym", "stir", "egg", -0.8),
]


def make_kg(rows: Iterable[Row], *, symmetrize: Iterable[str] = ()) -> KnowledgeGraph:
    return KnowledgeGraph.from_assertions(make_assertions(rows), symmetrize=symmetrize)


def make_assertions(rows: Iterable[Row]) -> List[Assertion]:
    return [Assertion(relation=r, start=s, end=e, weight=w) for r, s, e, w in rows]


def kg_tsv(rows: Iterable[Row]) -> str:
    return dump_tsv(make_assertions(rows))


def make_hypothesis(segment: str, *slots: SlotSpec) -> HypothesisSet:
    return HypothesisSet.model_validate({
        "segment": segment,
        "slots": [
            {
                "id": slot_id,
                "role": role,
                "candidates": [{"concept": concept, "score": score} for concept, score in candidates],
            }
            for slot_id, role, candidates in slots
        ],
    })


def hypotheses_jsonl(segments: Iterable[HypothesisSet]) -> str:
    return dump_hypotheses(segments)


def coordinate(g: Generator, direction: BondDirection, value: str) -> int:
    """生成器上给定方向与键值的坐标"""
    for b in g.bonds:
        if b.direction is direction and b.value == value:
            return b.coordinate
    raise AssertionError(f"{g} 没有 {direction.value}:{value} 键")


def pour_hypothesis(segment: str = "pour_oil") -> HypothesisSet:
    return make_hypothesis(
        segment,
        ("action", "action", [("pour", 0.9)]),
        ("object", "object", [("oil", 0.8)]),
    )


def kitchen_hypotheses() -> List[HypothesisSet]:
    return [
        make_hypothesis(
            "seg_a",
            ("subject", "subject", [("man", 0.9), ("woman", 0.6)]),
            ("action", "action", [("slice", 0.7), ("stir", 0.65)]),
            ("object", "object", [("onion", 0.8), ("egg", 0.5)]),
        ),
        make_hypothesis(
            "seg_b",
            ("subject", "subject", [("woman", 0.8)]),
            ("action", "action", [("stir", 0.9), ("pour", 0.4)]),
            ("object", "object", [("oil", 0.6), ("soup", 0.7)]),
        ),
        make_hypothesis(
            "seg_c",
            ("subject", "subject", [("man", 0.7)]),
            ("action", "action", [("pour", 0.8)]),
            ("object", "object", [("oil", 0.9), ("food", 0.3)]),
        ),
    ]

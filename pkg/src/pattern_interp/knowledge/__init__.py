"""知识图谱模块"""

from .graph import (
    Cue,
    KnowledgeGraph,
    Neighbor,
    assertion_strength,
    find_cues,
    neighbors,
    semantic_bond_energy,
)
from .loaders import load_kg, load_kg_file

__all__ = [
    "Cue",
    "KnowledgeGraph",
    "Neighbor",
    "assertion_strength",
    "find_cues",
    "neighbors",
    "semantic_bond_energy",
    "load_kg",
    "load_kg_file",
]

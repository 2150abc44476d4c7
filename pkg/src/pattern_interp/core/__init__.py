"""
核心模块初始化
导出主要的类型和模型
"""

from .types import (
    BondDirection, DirectionFilter, GeneratorKind, KGFormat, MoveKind,
    NeighborDirection, OutputFormat, SlotRole, normalize_concept,
)

from .models import (
    Assertion, Candidate, EnergyBreakdown, HypothesisSet, InferenceParams,
    Slot, SegmentResult, RunResult,
)

__all__ = [
    # 类型
    'BondDirection', 'DirectionFilter', 'GeneratorKind', 'KGFormat', 'MoveKind',
    'NeighborDirection', 'OutputFormat', 'SlotRole', 'normalize_concept',

    # 模型
    'Assertion', 'Candidate', 'EnergyBreakdown', 'HypothesisSet', 'InferenceParams',
    'Slot', 'SegmentResult', 'RunResult',
]

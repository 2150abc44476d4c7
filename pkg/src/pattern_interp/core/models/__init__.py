"""
Models 包 - 领域数据模型

此包包含假设、参数、能量与输出文档等 pydantic 模型。
"""

# 基础
from .base import BaseConfig

# 知识图谱
from .knowledge import Assertion, LoadReport

# 假设与参数
from .hypothesis import Candidate, Slot, HypothesisSet
from .params import InferenceParams

# 能量与文档
from .energy import EnergyBreakdown
from .documents import (
    AnswerDocument,
    BondDocument,
    ConfigurationDocument,
    EdgeDocument,
    GeneratorDocument,
    InterpretationDocument,
    SegmentDocument,
    TraceSummary,
)

# 运行结果
from .generation import RunResult, SegmentResult

__all__ = [
    "BaseConfig",
    "Assertion",
    "LoadReport",
    "Candidate",
    "Slot",
    "HypothesisSet",
    "InferenceParams",
    "EnergyBreakdown",
    "AnswerDocument",
    "BondDocument",
    "ConfigurationDocument",
    "EdgeDocument",
    "GeneratorDocument",
    "InterpretationDocument",
    "SegmentDocument",
    "TraceSummary",
    "RunResult",
    "SegmentResult",
]

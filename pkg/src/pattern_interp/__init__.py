"""
Pattern Interpretation Package

模式理论视频片段解释：把每个片段的噪声概念假设与常识知识图谱融合，
通过模拟退火最小化配置能量，输出排名解释、字幕与活动标签。
"""

__version__ = "0.1.0"

from .core.types import GeneratorKind, SlotRole
from .core.models import HypothesisSet, InferenceParams

__all__ = [
    "GeneratorKind",
    "SlotRole",
    "HypothesisSet",
    "InferenceParams",
]

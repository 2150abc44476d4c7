"""JSON 输出文档模型

字段声明顺序即输出键顺序；站点编号为规范编号（与生成器实例 id 无关）。
"""
from __future__ import annotations

from typing import List, Literal, Optional, Tuple

from pydantic import Field

from .base import BaseConfig
from .energy import EnergyBreakdown
from ..types import BondDirection, GeneratorKind, MoveKind, SlotRole


class BondDocument(BaseConfig):
    coordinate: int = Field(ge=0)
    direction: BondDirection
    value: str = Field(min_length=1)


class GeneratorDocument(BaseConfig):
    """生成器描述；来源字段按种类填写"""

    site: int = Field(ge=0, description="规范站点编号")
    kind: GeneratorKind
    concept: str = Field(min_length=1)
    slot: Optional[str] = Field(default=None, description="有据生成器的槽位")
    role: Optional[SlotRole] = Field(default=None)
    confidence: Optional[float] = Field(default=None, description="有据生成器的分类器置信度")
    feature_tag: Optional[str] = Field(default=None, description="特征生成器标签")
    cue_query: Optional[Tuple[str, str]] = Field(default=None, description="线索来源的概念对")
    bonds: List[BondDocument] = Field(default_factory=list)


class EdgeDocument(BaseConfig):
    """闭合键对 out -> in"""

    out_site: int = Field(ge=0)
    out_coordinate: int = Field(ge=0)
    in_site: int = Field(ge=0)
    in_coordinate: int = Field(ge=0)
    value: str
    bond_type: Literal["support", "semantic"]
    energy: float


class ConfigurationDocument(BaseConfig):
    """单个配置的完整结构与能量分解"""

    generators: List[GeneratorDocument] = Field(default_factory=list)
    edges: List[EdgeDocument] = Field(default_factory=list)
    energy: EnergyBreakdown = Field(default_factory=EnergyBreakdown)
    k_cost: float = Field(default=1.0, ge=0)
    q_count_in_bonds: bool = Field(default=False)
    wildcard_related_to: bool = Field(default=False)


class InterpretationDocument(BaseConfig):
    """排名后的解释"""

    rank: int = Field(ge=1)
    energy: float
    probability_weight: float = Field(ge=0)
    semantic_content: str
    label: Optional[str] = Field(default=None)
    grounded_connected: bool
    configuration: ConfigurationDocument


class TraceSummary(BaseConfig):
    iterations: int = Field(ge=0)
    accepted: int = Field(ge=0)
    acceptance_rate: float = Field(ge=0, le=1)
    best_energy: float
    moves: dict[MoveKind, int] = Field(default_factory=dict)


class SegmentDocument(BaseConfig):
    """一个片段的输出记录（JSON lines 中的一行）"""

    segment: str
    interpretations: List[InterpretationDocument] = Field(default_factory=list)
    trace: Optional[TraceSummary] = Field(default=None)


class AnswerDocument(BaseConfig):
    """合成实例的预置答案"""

    segment: str
    assignment: dict[str, str] = Field(description="槽位 -> 预置概念")
    label: str
    oracle_energy: float
    via_cue: Optional[str] = Field(default=None, description="预置对之间的桥接线索")

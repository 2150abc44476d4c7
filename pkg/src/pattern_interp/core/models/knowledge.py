"""知识图谱断言与加载报告"""
from __future__ import annotations

import math

from pydantic import Field, field_validator

from .base import BaseConfig
from ..types import ConceptId, KGFormat, RelationName


class Assertion(BaseConfig):
    """一条带权重的有向关系断言 (relation, start, end, weight)"""

    relation: RelationName = Field(description="关系名称")
    start: ConceptId = Field(description="起点概念")
    end: ConceptId = Field(description="终点概念")
    weight: float = Field(description="断言权重，可为负")

    @field_validator("weight")
    @classmethod
    def validate_weight(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("断言权重必须为有限实数")
        return v

    @property
    def triple(self) -> tuple[str, str, str]:
        return (self.relation, self.start, self.end)

    def reversed(self) -> Assertion:
        """反向断言（用于对称关系物化）"""
        return Assertion(relation=self.relation, start=self.end, end=self.start, weight=self.weight)


class LoadReport(BaseConfig):
    """知识图谱加载统计"""

    source_format: KGFormat = Field(description="源文件格式")
    assertions: int = Field(ge=0, description="去重后的断言数")
    concepts: int = Field(ge=0, description="概念数")
    duplicates_merged: int = Field(default=0, ge=0, description="合并的重复断言数")
    skipped_lines: int = Field(default=0, ge=0, description="跳过的非英文/注释行")
    symmetrized: int = Field(default=0, ge=0, description="对称化插入的反向断言数")

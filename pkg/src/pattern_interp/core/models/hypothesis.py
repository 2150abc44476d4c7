"""视频片段假设集合：每个槽位的 top-k 候选概念"""
from __future__ import annotations

import math
from typing import List

from pydantic import Field, field_validator, model_validator

from .base import BaseConfig
from ..types import ConceptId, SlotId, SlotRole
from ...config.defaults import HYPOTHESIS_DEFAULT_K_MAX


class Candidate(BaseConfig):
    """候选概念及其分类器置信度 f"""

    concept: ConceptId = Field(description="候选概念")
    score: float = Field(description="分类器置信度")

    @field_validator("score")
    @classmethod
    def validate_score(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("置信度必须为有限实数")
        return v


class Slot(BaseConfig):
    """假设槽位（动作/物体/主体/其它）"""

    id: SlotId = Field(description="槽位标识")
    role: SlotRole = Field(description="槽位角色")
    candidates: List[Candidate] = Field(min_length=1, description="按置信度降序排列的候选")

    @field_validator("candidates")
    @classmethod
    def sort_and_check_candidates(cls, v: List[Candidate]) -> List[Candidate]:
        """候选去重检查并按置信度降序（稳定排序）"""
        concepts = [c.concept for c in v]
        duplicates = sorted({c for c in concepts if concepts.count(c) > 1})
        if duplicates:
            raise ValueError(f"槽位内候选概念重复: {', '.join(duplicates)}")
        return sorted(v, key=lambda c: -c.score)

    @property
    def top(self) -> Candidate:
        return self.candidates[0]


class HypothesisSet(BaseConfig):
    """一个视频片段的假设集合"""

    segment: str = Field(min_length=1, description="片段标识")
    slots: List[Slot] = Field(min_length=1, description="有序槽位列表")
    k_max: int = Field(default=HYPOTHESIS_DEFAULT_K_MAX, ge=1, exclude=True, description="每槽最大候选数")

    @model_validator(mode="after")
    def validate_slots(self) -> HypothesisSet:
        ids = [slot.id for slot in self.slots]
        if len(set(ids)) != len(ids):
            raise ValueError("槽位标识必须唯一")
        for slot in self.slots:
            if len(slot.candidates) > self.k_max:
                raise ValueError(f"槽位 {slot.id} 候选数 {len(slot.candidates)} 超过 k_max={self.k_max}")
        return self

    def slot(self, slot_id: str) -> Slot:
        for slot in self.slots:
            if slot.id == slot_id:
                return slot
        raise KeyError(slot_id)

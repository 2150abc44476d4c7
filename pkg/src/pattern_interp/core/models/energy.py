"""能量分解模型"""
from __future__ import annotations

import math

from pydantic import Field, model_validator

from .base import BaseConfig
from ...config.defaults import ENERGY_CHECK_TOLERANCE


class EnergyBreakdown(BaseConfig):
    """E(c) = -(Σ支持键 + Σ语义键) + Q(c)"""

    support_sum: float = Field(default=0.0, description="闭合支持键能量之和")
    semantic_sum: float = Field(default=0.0, description="闭合语义键能量之和")
    q_cost: float = Field(default=0.0, ge=0, description="无据生成器开放键代价")
    total: float = Field(default=0.0, description="总能量")

    @model_validator(mode="after")
    def validate_total(self) -> EnergyBreakdown:
        expected = -(self.support_sum + self.semantic_sum) + self.q_cost
        if not math.isclose(self.total, expected, rel_tol=0.0, abs_tol=ENERGY_CHECK_TOLERANCE):
            raise ValueError(f"总能量 {self.total} 与分项不一致 ({expected})")
        return self

    @classmethod
    def from_sums(cls, support_sum: float, semantic_sum: float, q_cost: float) -> EnergyBreakdown:
        return cls(
            support_sum=support_sum,
            semantic_sum=semantic_sum,
            q_cost=q_cost,
            total=-(support_sum + semantic_sum) + q_cost,
        )

    @property
    def probability_weight(self) -> float:
        """未归一化概率 exp(-E)"""
        return math.exp(-self.total)

    def is_close(self, other: EnergyBreakdown, tolerance: float = ENERGY_CHECK_TOLERANCE) -> bool:
        return all(
            math.isclose(a, b, rel_tol=0.0, abs_tol=tolerance)
            for a, b in (
                (self.support_sum, other.support_sum),
                (self.semantic_sum, other.semantic_sum),
                (self.q_cost, other.q_cost),
                (self.total, other.total),
            )
        )

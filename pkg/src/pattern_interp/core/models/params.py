"""推断参数模型"""
from __future__ import annotations

from typing import Any

from pydantic import Field, computed_field

from .base import BaseConfig
from ...config.defaults import (
    GENERATOR_DEFAULT_MAX_SEMANTIC_BONDS,
    GENERATOR_DEFAULT_WILDCARD_RELATED_TO,
    INFERENCE_DEFAULT_CHAINS,
    INFERENCE_DEFAULT_COOLING_RATIO,
    INFERENCE_DEFAULT_CUE_CANDIDATES,
    INFERENCE_DEFAULT_CUE_STRICT,
    INFERENCE_DEFAULT_CUES_PER_PAIR,
    INFERENCE_DEFAULT_INITIAL_TEMPERATURE,
    INFERENCE_DEFAULT_ITERATIONS,
    INFERENCE_DEFAULT_K_COST,
    INFERENCE_DEFAULT_LOCAL_RATIO,
    INFERENCE_DEFAULT_M_SWAP,
    INFERENCE_DEFAULT_Q_COUNT_IN_BONDS,
    INFERENCE_DEFAULT_SEED,
    INFERENCE_DEFAULT_TOP_N,
)


class InferenceParams(BaseConfig):
    """模拟退火与提议函数参数"""

    iterations: int = Field(default=INFERENCE_DEFAULT_ITERATIONS, ge=1, description="迭代步数")
    initial_temperature: float = Field(default=INFERENCE_DEFAULT_INITIAL_TEMPERATURE, gt=0, description="初始温度 T0")
    cooling_ratio: float = Field(default=INFERENCE_DEFAULT_COOLING_RATIO, gt=0, lt=1, description="几何降温系数")
    k_cost: float = Field(default=INFERENCE_DEFAULT_K_COST, ge=0, description="无据生成器开放键代价常数 k")
    m_swap: int = Field(default=INFERENCE_DEFAULT_M_SWAP, ge=1, description="局部提议的交换候选数 m")
    cues_per_pair: int = Field(default=INFERENCE_DEFAULT_CUES_PER_PAIR, ge=0, description="每对有据概念的最大线索数")
    cue_candidates: int = Field(default=INFERENCE_DEFAULT_CUE_CANDIDATES, ge=1, description="线索候选池大小")
    top_n: int = Field(default=INFERENCE_DEFAULT_TOP_N, ge=1, description="输出的解释数")
    rng_seed: int = Field(default=INFERENCE_DEFAULT_SEED, ge=0, lt=2**64, description="随机种子")
    local_ratio: float = Field(default=INFERENCE_DEFAULT_LOCAL_RATIO, ge=0, le=1, description="局部提议概率")
    max_semantic_bonds: int = Field(
        default=GENERATOR_DEFAULT_MAX_SEMANTIC_BONDS, ge=1, description="每个方向的最大语义键数"
    )
    q_count_in_bonds: bool = Field(default=INFERENCE_DEFAULT_Q_COUNT_IN_BONDS, description="Q 是否计入开放入键")
    cue_strict: bool = Field(default=INFERENCE_DEFAULT_CUE_STRICT, description="线索谓词是否排除反向直接断言")
    chains: int = Field(default=INFERENCE_DEFAULT_CHAINS, ge=1, description="每个片段的独立链数")
    wildcard_related_to: bool = Field(
        default=GENERATOR_DEFAULT_WILDCARD_RELATED_TO, description="RelatedTo 是否匹配任意关系"
    )
    debug_checks: bool = Field(default=False, description="每步校验能量缓存与结构")

    @computed_field
    @property
    def final_temperature(self) -> float:
        return self.initial_temperature * self.cooling_ratio ** self.iterations

    def with_overrides(self, **overrides: Any) -> InferenceParams:
        """返回应用覆盖后的新参数（None 值忽略）"""
        data = self.model_dump(exclude={"final_temperature"})
        data.update({key: value for key, value in overrides.items() if value is not None})
        return InferenceParams(**data)

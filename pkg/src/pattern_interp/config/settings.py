from __future__ import annotations

from pathlib import Path
from typing import Any, Optional, Set

import yaml
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from .defaults import (
    GENERATOR_DEFAULT_MAX_SEMANTIC_BONDS,
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
    ORACLE_DEFAULT_BUDGET,
    RUNNER_DEFAULT_WORKERS,
)
from ..core.models.params import InferenceParams
from ..core.types import KGFormat, OutputFormat


class AppSettings(BaseSettings):
    """全局应用设置（可由环境变量/配置文件覆盖）"""

    model_config = SettingsConfigDict(
        env_prefix="PATI_",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # 全局
    verbose: bool = Field(default=False, description="详细日志输出")
    workers: int = Field(default=RUNNER_DEFAULT_WORKERS, ge=1, le=64, description="并行片段数")

    # 知识图谱
    kg_format: KGFormat = Field(default=KGFormat.TSV, description="知识图谱文件格式")
    symmetrize: Set[str] = Field(default_factory=set, description="加载时物化反向边的关系")
    wildcard_related_to: bool = Field(default=False, description="RelatedTo 通配匹配")

    # 退火参数
    iterations: int = Field(default=INFERENCE_DEFAULT_ITERATIONS, ge=1)
    initial_temperature: float = Field(default=INFERENCE_DEFAULT_INITIAL_TEMPERATURE, gt=0)
    cooling_ratio: float = Field(default=INFERENCE_DEFAULT_COOLING_RATIO, gt=0, lt=1)
    k_cost: float = Field(default=INFERENCE_DEFAULT_K_COST, ge=0)
    m_swap: int = Field(default=INFERENCE_DEFAULT_M_SWAP, ge=1)
    cues_per_pair: int = Field(default=INFERENCE_DEFAULT_CUES_PER_PAIR, ge=0)
    cue_candidates: int = Field(default=INFERENCE_DEFAULT_CUE_CANDIDATES, ge=1)
    top_n: int = Field(default=INFERENCE_DEFAULT_TOP_N, ge=1)
    seed: int = Field(default=INFERENCE_DEFAULT_SEED, ge=0, lt=2**64)
    local_ratio: float = Field(default=INFERENCE_DEFAULT_LOCAL_RATIO, ge=0, le=1)
    max_semantic_bonds: int = Field(default=GENERATOR_DEFAULT_MAX_SEMANTIC_BONDS, ge=1)
    q_count_in_bonds: bool = Field(default=INFERENCE_DEFAULT_Q_COUNT_IN_BONDS)
    cue_strict: bool = Field(default=INFERENCE_DEFAULT_CUE_STRICT)
    chains: int = Field(default=INFERENCE_DEFAULT_CHAINS, ge=1)
    debug_checks: bool = Field(default=False)

    # 穷举
    oracle_budget: int = Field(default=ORACLE_DEFAULT_BUDGET, ge=1)

    # 输出
    output_format: OutputFormat = Field(default=OutputFormat.JSON)
    scorer_counts: Optional[Path] = Field(default=None, description="句子打分词频文件")
    verb_overrides: Optional[Path] = Field(default=None, description="动词变形覆盖 YAML")

    # 配置文件（若 CLI 未提供，可通过环境变量指向）
    config_file: Optional[Path] = Field(default=None, description="配置文件路径，可选")

    @classmethod
    def from_file(cls, path: Optional[Path]) -> AppSettings:
        """从 YAML/JSON 配置文件加载；环境变量作为更低优先级的来源"""
        if path is None:
            return cls()
        data: Any = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
        if not isinstance(data, dict):
            raise ValueError(f"配置文件顶层必须是映射: {path}")
        data["config_file"] = path
        return cls(**data)

    def inference_params(self, **overrides: Any) -> InferenceParams:
        """由设置构造推断参数；overrides 中值为 None 的项忽略"""
        values: dict[str, Any] = {
            "iterations": self.iterations,
            "initial_temperature": self.initial_temperature,
            "cooling_ratio": self.cooling_ratio,
            "k_cost": self.k_cost,
            "m_swap": self.m_swap,
            "cues_per_pair": self.cues_per_pair,
            "cue_candidates": self.cue_candidates,
            "top_n": self.top_n,
            "rng_seed": self.seed,
            "local_ratio": self.local_ratio,
            "max_semantic_bonds": self.max_semantic_bonds,
            "q_count_in_bonds": self.q_count_in_bonds,
            "cue_strict": self.cue_strict,
            "chains": self.chains,
            "wildcard_related_to": self.wildcard_related_to,
            "debug_checks": self.debug_checks,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return InferenceParams(**values)


__all__ = ["AppSettings"]

"""批处理结果模块"""
from __future__ import annotations

from typing import Any, Dict, List, Optional

from pydantic import Field, computed_field

from .base import BaseConfig
from .documents import SegmentDocument


class SegmentResult(BaseConfig):
    """单个片段的处理结果"""
    index: int = Field(ge=0, description="片段在输入中的位置")
    segment: str = Field(description="片段标识")
    success: bool = Field(description="是否成功")
    message: str = Field(default="", description="结果消息")
    document: Optional[SegmentDocument] = Field(default=None, description="输出文档")
    output: str = Field(default="", description="按输出格式渲染后的文本")
    error_type: Optional[str] = Field(default=None, description="异常类型")
    exit_code: int = Field(default=0, description="失败时对应的退出码")
    seconds: float = Field(default=0.0, ge=0, description="耗时（秒）")

    @property
    def best_energy(self) -> Optional[float]:
        if self.document is None or not self.document.interpretations:
            return None
        return self.document.interpretations[0].energy


class RunResult(BaseConfig):
    """整次运行结果，segments 按输入顺序排列"""
    segments: List[SegmentResult] = Field(default_factory=list)
    stats: Optional[Dict[str, Any]] = Field(default=None, description="运行统计信息")

    @computed_field
    @property
    def success(self) -> bool:
        return all(result.success for result in self.segments)

    @property
    def failures(self) -> List[SegmentResult]:
        return [result for result in self.segments if not result.success]

    @property
    def exit_code(self) -> int:
        failures = self.failures
        return failures[0].exit_code if failures else 0

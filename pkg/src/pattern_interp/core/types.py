"""
核心类型定义模块
概念标识、生成器/键的枚举以及通用结果类型
"""

from __future__ import annotations

import math
import re
from enum import Enum
from functools import lru_cache
from typing import Annotated, Any, Dict, Optional, Union

from pydantic import AfterValidator, BaseModel, ConfigDict, Field, computed_field

# 基础 Pydantic 配置
class BaseTypeModel(BaseModel):
    """基础类型模型配置"""
    model_config = ConfigDict(
        frozen=True,
        extra='forbid',
        validate_assignment=True,
        use_enum_values=False,
        str_strip_whitespace=True,
    )


_WHITESPACE = re.compile(r"\s+")


@lru_cache(maxsize=65536)
def normalize_concept(raw: str) -> str:
    """概念规范化：小写、去首尾空白、内部空白替换为下划线

    normalize_concept(normalize_concept(x)) == normalize_concept(x)
    """
    return _WHITESPACE.sub("_", raw.strip().lower())


_BELOW_ONE = math.nextafter(1.0, 0.0)


def bounded_tanh(x: float) -> float:
    """tanh 截断到开区间 (-1, 1)；|x| 较大时 math.tanh 会舍入为 ±1.0"""
    return max(-_BELOW_ONE, min(_BELOW_ONE, math.tanh(x)))


def _validate_concept(value: str) -> str:
    normalized = normalize_concept(value)
    if not normalized:
        raise ValueError("概念标识不能为空")
    return normalized


# 基础类型定义 - 使用 Pydantic 约束类型
ConceptId = Annotated[str, AfterValidator(_validate_concept), Field(description="规范化后的概念标识")]
RelationName = Annotated[str, Field(min_length=1, max_length=128, pattern=r"^\S+$", description="关系名称")]
SlotId = Annotated[str, Field(min_length=1, max_length=64, description="假设槽位标识")]

# 保留的键值：支持键（feature）与通配关系
FEATURE_BOND_VALUE = "feature"
WILDCARD_RELATION = "RelatedTo"


class GeneratorKind(str, Enum):
    """生成器种类：特征 / 有据概念 / 无据上下文概念"""
    FEATURE = "feature"
    GROUNDED = "grounded"
    UNGROUNDED = "ungrounded"

    @property
    def description(self) -> str:
        descriptions = {
            GeneratorKind.FEATURE: "特征生成器 - 直接的图像证据",
            GeneratorKind.GROUNDED: "有据概念生成器 - 分类器假设",
            GeneratorKind.UNGROUNDED: "无据上下文生成器 - 来自知识图谱的上下文线索",
        }
        return descriptions[self]

    @property
    def is_concept(self) -> bool:
        """是否为概念生成器（可参与语义键）"""
        return self is not GeneratorKind.FEATURE


class BondDirection(str, Enum):
    """键方向"""
    IN = "in"
    OUT = "out"


class DirectionFilter(str, Enum):
    """open_bonds 的方向过滤器"""
    IN = "in"
    OUT = "out"
    ANY = "any"

    def matches(self, direction: BondDirection) -> bool:
        return self is DirectionFilter.ANY or self.value == direction.value


class NeighborDirection(str, Enum):
    """知识图谱邻接方向"""
    OUT = "out"
    IN = "in"


class SlotRole(str, Enum):
    """假设槽位角色"""
    ACTION = "action"
    OBJECT = "object"
    SUBJECT = "subject"
    OTHER = "other"


class KGFormat(str, Enum):
    """知识图谱文件格式"""
    TSV = "tsv"
    CONCEPTNET = "conceptnet"


class OutputFormat(str, Enum):
    """解释结果输出格式"""
    JSON = "json"
    CAPTION = "caption"
    LABEL = "label"
    DOT = "dot"
    CONTENT = "content"


class MoveKind(str, Enum):
    """退火轨迹中的提议类型"""
    INITIAL = "initial"
    LOCAL = "local"
    GLOBAL_INSERT = "global_insert"
    GLOBAL_DELETE = "global_delete"
    GLOBAL_REWIRE = "global_rewire"
    IDENTITY = "identity"


class ExitCode(int, Enum):
    """CLI 退出码"""
    SUCCESS = 0
    USAGE = 1
    INGESTION = 2
    RUNTIME = 3


# 结果类型
class Success(BaseTypeModel):
    """成功结果模型"""
    value: Any = Field(description="成功返回的值")
    message: Optional[str] = Field(default=None, description="成功消息")

    @computed_field
    @property
    def is_success(self) -> bool:
        return True


class Failure(BaseTypeModel):
    """失败结果模型"""
    error: str = Field(description="错误信息")
    error_code: Optional[str] = Field(default=None, description="错误代码")
    details: Optional[Dict[str, Any]] = Field(default=None, description="错误详情")

    @computed_field
    @property
    def is_success(self) -> bool:
        return False


Result = Union[Success, Failure]


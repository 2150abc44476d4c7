"""异常层次

所有领域错误都派生自 InterpretationError；CLI 依据 exit_code 选择退出码。
"""

from __future__ import annotations

from .types import ExitCode


class InterpretationError(Exception):
    """领域错误基类"""

    exit_code: ExitCode = ExitCode.RUNTIME


class IngestionError(InterpretationError):
    """输入文件读取/解析失败"""

    exit_code = ExitCode.INGESTION


class KnowledgeGraphParseError(IngestionError):
    def __init__(self, line_no: int, reason: str):
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"知识图谱第 {line_no} 行格式错误: {reason}")


class EmptyKnowledgeGraphError(IngestionError):
    def __init__(self) -> None:
        super().__init__("知识图谱为空: no assertions")


class HypothesisParseError(IngestionError):
    def __init__(self, line_no: int, reason: str):
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"假设文件第 {line_no} 行格式错误: {reason}")


class GeneratorConstructionError(InterpretationError):
    """生成器构造参数非法"""


class BondError(InterpretationError):
    """键连接/断开操作失败"""


class BondNotOpenError(BondError):
    def __init__(self, site: int, coordinate: int):
        self.site = site
        self.coordinate = coordinate
        super().__init__(f"站点 {site} 的键 {coordinate} 不是开放状态")


class BondValueMismatchError(BondError):
    def __init__(self, out_value: str, in_value: str):
        self.out_value = out_value
        self.in_value = in_value
        super().__init__(f"键值不匹配: {out_value} -> {in_value}")


class BondKindError(BondError):
    """方向或生成器种类不合法"""


class UnknownSiteError(BondError):
    def __init__(self, site: int):
        self.site = site
        super().__init__(f"未知站点: {site}")


class UnknownEdgeError(BondError):
    def __init__(self, edge: object):
        self.edge = edge
        super().__init__(f"未知连接: {edge}")


class SearchBudgetExceeded(InterpretationError):
    """穷举搜索空间超过预算"""

    def __init__(self, size: int, budget: int):
        self.size = size
        self.budget = budget
        super().__init__(f"穷举搜索空间 {size} 超过预算 {budget}")


class MissingRoleError(InterpretationError):
    """渲染所需的槽位角色缺失"""

    def __init__(self, role: str):
        self.role = role
        super().__init__(f"解释中缺少角色: {role}")

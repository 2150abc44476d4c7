"""领域模型基类"""
from pydantic import BaseModel, ConfigDict


class BaseConfig(BaseModel):
    """不可变、拒绝未知字段；输入文件与输出文档共用"""

    model_config = ConfigDict(
        frozen=True,
        extra='forbid',
        validate_assignment=True,
        str_strip_whitespace=True,
    )

    def to_json_line(self) -> str:
        """单行 JSON（字段按声明顺序）加换行，用于 JSON lines 文件"""
        return self.model_dump_json() + "\n"

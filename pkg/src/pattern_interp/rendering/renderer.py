"""描述句模板渲染（jinja2，纯文本）"""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path
from typing import Any

from jinja2 import Environment, FileSystemLoader, StrictUndefined

TEMPLATES_DIR = Path(__file__).parent / "templates"


def concept_words(concept: str) -> str:
    """概念标识 -> 自然语言词组：ice_cream -> ice cream"""
    return concept.replace("_", " ")


@lru_cache(maxsize=1)
def caption_environment() -> Environment:
    # 缺失的模板变量直接报错；句子在一行内，不保留换行
    env = Environment(
        loader=FileSystemLoader(str(TEMPLATES_DIR)),
        autoescape=False,
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=False,
        undefined=StrictUndefined,
    )
    env.filters["words"] = concept_words
    return env


def render_caption(template_name: str = "caption.j2", **slots: Any) -> str:
    return caption_environment().get_template(template_name).render(**slots).strip()

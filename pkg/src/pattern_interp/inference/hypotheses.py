"""假设文件（JSON lines）读写"""

from __future__ import annotations

import json
from pathlib import Path
from typing import BinaryIO, Iterable, List, Union

from pydantic import ValidationError

from ..config.defaults import HYPOTHESIS_DEFAULT_K_MAX
from ..core.errors import HypothesisParseError, IngestionError
from ..core.models.hypothesis import HypothesisSet
from ..utils.logging import get_logger

logger = get_logger(__name__)


def _describe(exc: ValidationError) -> str:
    parts = []
    for err in exc.errors():
        location = ".".join(str(item) for item in err["loc"])
        parts.append(f"{location}: {err['msg']}" if location else err["msg"])
    return "; ".join(parts)


def parse_hypotheses(text: str, k_max: int = HYPOTHESIS_DEFAULT_K_MAX) -> List[HypothesisSet]:
    """每个非空行一个片段；错误携带行号"""
    segments: List[HypothesisSet] = []
    seen: set[str] = set()
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
        except json.JSONDecodeError as exc:
            raise HypothesisParseError(line_no, f"JSON 无法解析: {exc.msg}") from None
        if not isinstance(data, dict):
            raise HypothesisParseError(line_no, "每行必须是 JSON 对象")
        try:
            hypothesis = HypothesisSet.model_validate({**data, "k_max": k_max})
        except ValidationError as exc:
            raise HypothesisParseError(line_no, _describe(exc)) from None
        if hypothesis.segment in seen:
            raise HypothesisParseError(line_no, f"片段标识重复: {hypothesis.segment}")
        seen.add(hypothesis.segment)
        segments.append(hypothesis)
    logger.info("hypotheses_loaded", segments=len(segments))
    return segments


def load_hypotheses(source: Union[bytes, BinaryIO], k_max: int = HYPOTHESIS_DEFAULT_K_MAX) -> List[HypothesisSet]:
    raw = source if isinstance(source, bytes) else source.read()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise IngestionError(f"假设文件不是合法的 UTF-8 文本: {exc}") from exc
    return parse_hypotheses(text, k_max)


def load_hypotheses_file(path: Path, k_max: int = HYPOTHESIS_DEFAULT_K_MAX) -> List[HypothesisSet]:
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise IngestionError(f"无法读取假设文件 {path}: {exc}") from exc
    return load_hypotheses(raw, k_max)


def dump_hypotheses(segments: Iterable[HypothesisSet]) -> str:
    return "".join(segment.to_json_line() for segment in segments)

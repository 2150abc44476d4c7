"""
知识图谱加载

支持两种格式：
- tsv: relation<TAB>start<TAB>end<TAB>weight，# 开头为注释
- conceptnet: ConceptNet 5 断言导出 (uri, /r/Rel, /c/en/start, /c/en/end, json)
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import BinaryIO, Iterable, Iterator, List, Tuple, Union

from pydantic import ValidationError

from .graph import KnowledgeGraph
from ..config.defaults import KG_COMMENT_PREFIX
from ..core.errors import EmptyKnowledgeGraphError, IngestionError, KnowledgeGraphParseError
from ..core.models.knowledge import Assertion
from ..core.types import KGFormat
from ..utils.logging import get_logger

logger = get_logger(__name__)

Source = Union[bytes, BinaryIO]

_CONCEPTNET_ENGLISH = "/c/en/"


def _decode(source: Source) -> str:
    raw = source if isinstance(source, bytes) else source.read()
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise IngestionError(f"知识图谱不是合法的 UTF-8 文本: {exc}") from exc


def _parse_weight(text: str, line_no: int) -> float:
    try:
        weight = float(text)
    except ValueError:
        raise KnowledgeGraphParseError(line_no, f"权重不是数字: {text!r}") from None
    if not math.isfinite(weight):
        raise KnowledgeGraphParseError(line_no, f"权重必须有限: {text!r}")
    return weight


def _make_assertion(line_no: int, relation: str, start: str, end: str, weight: float) -> Assertion:
    try:
        return Assertion(relation=relation, start=start, end=end, weight=weight)
    except ValidationError as exc:
        reason = "; ".join(err["msg"] for err in exc.errors())
        raise KnowledgeGraphParseError(line_no, reason) from None


def _iter_lines(text: str) -> Iterator[Tuple[int, str]]:
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith(KG_COMMENT_PREFIX):
            continue
        yield line_no, line


def parse_tsv(text: str) -> List[Assertion]:
    """解析规范 TSV 格式"""
    assertions: List[Assertion] = []
    for line_no, line in _iter_lines(text):
        fields = line.split("\t")
        if len(fields) != 4:
            raise KnowledgeGraphParseError(line_no, f"期望 4 个字段，实际 {len(fields)} 个")
        relation, start, end, weight = fields
        assertions.append(_make_assertion(line_no, relation.strip(), start, end, _parse_weight(weight.strip(), line_no)))
    return assertions


def _conceptnet_concept(uri: str) -> str:
    # /c/en/ice_cream/n/wn/food -> ice_cream
    return uri[len(_CONCEPTNET_ENGLISH):].split("/", 1)[0]


def parse_conceptnet(text: str) -> Tuple[List[Assertion], int]:
    """解析 ConceptNet 断言导出；非英文行跳过并计数"""
    assertions: List[Assertion] = []
    skipped = 0
    for line_no, line in _iter_lines(text):
        fields = line.split("\t")
        if len(fields) != 5:
            raise KnowledgeGraphParseError(line_no, f"期望 5 个字段，实际 {len(fields)} 个")
        _, relation, start, end, extra = fields
        if not (start.startswith(_CONCEPTNET_ENGLISH) and end.startswith(_CONCEPTNET_ENGLISH)):
            skipped += 1
            continue
        if not relation.startswith("/r/"):
            raise KnowledgeGraphParseError(line_no, f"关系 URI 非法: {relation!r}")
        try:
            info = json.loads(extra)
        except json.JSONDecodeError as exc:
            raise KnowledgeGraphParseError(line_no, f"JSON 字段无法解析: {exc.msg}") from None
        if not isinstance(info, dict) or "weight" not in info:
            raise KnowledgeGraphParseError(line_no, "JSON 字段缺少 weight")
        weight = _parse_weight(str(info["weight"]), line_no)
        assertions.append(
            _make_assertion(
                line_no,
                relation[len("/r/"):],
                _conceptnet_concept(start),
                _conceptnet_concept(end),
                weight,
            )
        )
    return assertions, skipped


def load_kg(
    source: Source,
    format: KGFormat = KGFormat.TSV,
    *,
    symmetrize: Iterable[str] = (),
) -> KnowledgeGraph:
    """从字节流加载知识图谱

    Raises:
        KnowledgeGraphParseError: 行格式错误（携带行号）
        EmptyKnowledgeGraphError: 没有任何断言
    """
    text = _decode(source)
    fmt = KGFormat(format)
    if fmt is KGFormat.TSV:
        assertions, skipped = parse_tsv(text), 0
    else:
        assertions, skipped = parse_conceptnet(text)
    if not assertions:
        raise EmptyKnowledgeGraphError()

    kg = KnowledgeGraph.from_assertions(
        assertions,
        symmetrize=symmetrize,
        source_format=fmt,
        skipped_lines=skipped,
    )
    report = kg.load_report
    logger.info(
        "kg_loaded",
        format=fmt.value,
        assertions=report.assertions,
        concepts=report.concepts,
        duplicates=report.duplicates_merged,
        skipped=report.skipped_lines,
        symmetrized=report.symmetrized,
    )
    return kg


def load_kg_file(path: Path, format: KGFormat = KGFormat.TSV, *, symmetrize: Iterable[str] = ()) -> KnowledgeGraph:
    try:
        with path.open("rb") as handle:
            return load_kg(handle, format, symmetrize=symmetrize)
    except OSError as exc:
        raise IngestionError(f"无法读取知识图谱文件 {path}: {exc}") from exc


def dump_tsv(assertions: Iterable[Assertion]) -> str:
    """序列化为规范 TSV（合成数据写出用）"""
    return "".join(f"{a.relation}\t{a.start}\t{a.end}\t{a.weight!r}\n" for a in assertions)

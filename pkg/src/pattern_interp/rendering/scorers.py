"""
句子打分器

默认实现：一元与二元词频的对数之和，未登录项按下限计数。
词频文件为 TSV：`token[ token]<TAB>count`。
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Dict, List, Optional, Protocol, Tuple, runtime_checkable

from ..config.defaults import SCORER_UNKNOWN_FLOOR
from ..core.errors import IngestionError
from ..utils.logging import get_logger

logger = get_logger(__name__)


@runtime_checkable
class SentenceScorer(Protocol):
    """分数越高越好；必须是确定性的"""

    def score(self, sentence: str) -> float: ...


def tokenize(sentence: str) -> List[str]:
    return [token for token in sentence.lower().split(" ") if token]


class UniformScorer:
    """所有句子同分，由调用方的字典序并列规则决定结果"""

    def score(self, sentence: str) -> float:
        return 0.0


class FrequencyScorer:
    def __init__(
        self,
        unigrams: Dict[str, float],
        bigrams: Dict[Tuple[str, str], float],
        floor: float = SCORER_UNKNOWN_FLOOR,
    ):
        if floor <= 0:
            raise ValueError("floor 必须为正数")
        self.unigrams = unigrams
        self.bigrams = bigrams
        self.floor = floor

    def _log(self, count: Optional[float]) -> float:
        return math.log(max(count or 0.0, self.floor))

    def score(self, sentence: str) -> float:
        tokens = tokenize(sentence)
        total = sum(self._log(self.unigrams.get(token)) for token in tokens)
        total += sum(self._log(self.bigrams.get(pair)) for pair in zip(tokens, tokens[1:]))
        return total

    @classmethod
    def from_text(cls, text: str, floor: float = SCORER_UNKNOWN_FLOOR) -> FrequencyScorer:
        unigrams: Dict[str, float] = {}
        bigrams: Dict[Tuple[str, str], float] = {}
        for line_no, line in enumerate(text.splitlines(), start=1):
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 2:
                raise IngestionError(f"词频文件第 {line_no} 行需要 2 个字段")
            try:
                count = float(fields[1])
            except ValueError:
                raise IngestionError(f"词频文件第 {line_no} 行计数不是数字: {fields[1]!r}") from None
            if not math.isfinite(count) or count < 0:
                raise IngestionError(f"词频文件第 {line_no} 行计数非法: {fields[1]!r}")
            tokens = tokenize(fields[0])
            if len(tokens) == 1:
                unigrams[tokens[0]] = unigrams.get(tokens[0], 0.0) + count
            elif len(tokens) == 2:
                key = (tokens[0], tokens[1])
                bigrams[key] = bigrams.get(key, 0.0) + count
            else:
                raise IngestionError(f"词频文件第 {line_no} 行只支持一元或二元项")
        return cls(unigrams, bigrams, floor)

    @classmethod
    def from_file(cls, path: Path, floor: float = SCORER_UNKNOWN_FLOOR) -> FrequencyScorer:
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise IngestionError(f"无法读取词频文件 {path}: {exc}") from exc
        scorer = cls.from_text(text, floor)
        logger.info("scorer_loaded", path=str(path), unigrams=len(scorer.unigrams), bigrams=len(scorer.bigrams))
        return scorer


def load_scorer(path: Optional[Path]) -> SentenceScorer:
    """有词频文件时使用 FrequencyScorer，否则 UniformScorer"""
    if path is None:
        return UniformScorer()
    return FrequencyScorer.from_file(path)

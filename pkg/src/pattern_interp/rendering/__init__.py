"""输出渲染：字幕、标签、打分器与 JSON/DOT 序列化"""

from .captions import (
    CaptionResult,
    VerbInflector,
    caption_candidates,
    label_from_assignment,
    to_caption,
    to_label,
)
from .scorers import FrequencyScorer, SentenceScorer, UniformScorer, load_scorer
from .serialize import from_document, parse_json, to_document, to_dot, to_json

__all__ = [
    "CaptionResult",
    "VerbInflector",
    "caption_candidates",
    "label_from_assignment",
    "to_caption",
    "to_label",
    "FrequencyScorer",
    "SentenceScorer",
    "UniformScorer",
    "load_scorer",
    "from_document",
    "parse_json",
    "to_document",
    "to_dot",
    "to_json",
]

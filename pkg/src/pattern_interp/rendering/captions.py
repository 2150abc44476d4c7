"""
模板字幕与活动标签

Determiner(A, The) - Subject - Verb(一般现在 / 现在进行) - [Preposition] - Determiner - Object
线索概念不进入句子。
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Tuple

import yaml

from .renderer import concept_words, render_caption
from .scorers import SentenceScorer, UniformScorer
from ..config.defaults import CAPTION_DETERMINERS, CAPTION_PREPOSITIONS
from ..core.errors import IngestionError, MissingRoleError
from ..core.types import SlotRole
from ..pattern.configuration import Configuration

_VOWELS = "aeiou"
_IRREGULAR_THIRD = {"be": "is", "have": "has", "do": "does", "go": "goes"}


def _is_short_cvc(word: str) -> bool:
    """单音节且以 辅音-元音-辅音 结尾（末尾不是 w/x/y）"""
    if len(word) < 3 or word[-1] in "wxy" or word[-1] in _VOWELS:
        return False
    if not (word[-2] in _VOWELS and word[-3] not in _VOWELS):
        return False
    return len(re.findall(r"[aeiou]+", word)) == 1


def third_person(verb: str) -> str:
    if verb in _IRREGULAR_THIRD:
        return _IRREGULAR_THIRD[verb]
    if verb.endswith(("s", "x", "z", "ch", "sh", "o")):
        return verb + "es"
    if len(verb) > 1 and verb.endswith("y") and verb[-2] not in _VOWELS:
        return verb[:-1] + "ies"
    return verb + "s"


def present_participle(verb: str) -> str:
    if verb.endswith("ie"):
        return verb[:-2] + "ying"
    if verb.endswith(("ee", "ye", "oe")) or verb == "be":
        return verb + "ing"
    if verb.endswith("e") and len(verb) > 2:
        return verb[:-1] + "ing"
    if _is_short_cvc(verb):
        return verb + verb[-1] + "ing"
    return verb + "ing"


class VerbInflector:
    """内置变形规则 + 覆盖表 {verb: {third: ..., progressive: ...}}"""

    def __init__(self, overrides: Optional[Mapping[str, Mapping[str, str]]] = None):
        self.overrides: Dict[str, Dict[str, str]] = {
            verb.lower(): dict(forms) for verb, forms in (overrides or {}).items()
        }

    @classmethod
    def from_file(cls, path: Path) -> VerbInflector:
        try:
            data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
        except (OSError, yaml.YAMLError) as exc:
            raise IngestionError(f"无法读取动词覆盖文件 {path}: {exc}") from exc
        if not isinstance(data, dict) or not all(isinstance(v, dict) for v in data.values()):
            raise IngestionError(f"动词覆盖文件格式应为 {{verb: {{third: ..., progressive: ...}}}}: {path}")
        return cls(data)

    def _split(self, verb: str) -> Tuple[str, str]:
        # pick_up -> ("pick", " up")
        words = verb.replace("_", " ").split()
        return words[0], "".join(f" {w}" for w in words[1:])

    def third(self, verb: str) -> str:
        head, tail = self._split(verb)
        form = self.overrides.get(head, {}).get("third") or third_person(head)
        return form + tail

    def progressive(self, verb: str) -> str:
        head, tail = self._split(verb)
        form = self.overrides.get(head, {}).get("progressive") or present_participle(head)
        return f"is {form}{tail}"


@dataclass(frozen=True, slots=True)
class CaptionTemplate:
    """一种模板填充"""
    determiner: str
    subject: str
    verb: str
    preposition: Optional[str]
    object_determiner: str
    object: str

    def render(self) -> str:
        return render_caption(
            determiner=self.determiner,
            subject=self.subject,
            verb=self.verb,
            preposition=self.preposition,
            object_determiner=self.object_determiner,
            object=self.object,
        )


@dataclass(frozen=True)
class CaptionResult:
    sentence: str
    score: float
    candidates: List[Tuple[str, float]]


def role_concept(c: Configuration, role: SlotRole) -> str:
    """按槽位顺序第一个该角色的有据概念"""
    for site in c.grounded_sites():
        g = c.generator(site)
        if g.role is role:
            return g.concept
    raise MissingRoleError(role.value)


def caption_candidates(c: Configuration, inflector: Optional[VerbInflector] = None) -> List[CaptionTemplate]:
    inflector = inflector or VerbInflector()
    verb = role_concept(c, SlotRole.ACTION)
    subject = role_concept(c, SlotRole.SUBJECT)
    obj = role_concept(c, SlotRole.OBJECT)
    verbs = (inflector.third(verb), inflector.progressive(verb))
    return [
        CaptionTemplate(det1, subject, form, prep, det2, obj)
        for det1, form, prep, det2 in itertools.product(CAPTION_DETERMINERS, verbs, CAPTION_PREPOSITIONS, CAPTION_DETERMINERS)
    ]


def to_caption(
    c: Configuration,
    scorer: Optional[SentenceScorer] = None,
    inflector: Optional[VerbInflector] = None,
) -> CaptionResult:
    """枚举全部模板填充并打分，返回最高分句子（并列取字典序最小）"""
    scorer = scorer or UniformScorer()
    sentences = [template.render() for template in caption_candidates(c, inflector)]
    scored = [(sentence, scorer.score(sentence)) for sentence in sentences]
    sentence, score = min(scored, key=lambda item: (-item[1], item[0]))
    return CaptionResult(sentence=sentence, score=score, candidates=scored)


def to_label(c: Configuration) -> str:
    """"<verb> <object>"，动词原形、小写"""
    verb = role_concept(c, SlotRole.ACTION)
    obj = role_concept(c, SlotRole.OBJECT)
    return f"{concept_words(verb)} {concept_words(obj)}".lower()


def label_from_assignment(assignment: Mapping[str, str], roles: Mapping[str, SlotRole]) -> Optional[str]:
    """槽位赋值 -> 标签；缺少动作或物体角色时返回 None"""
    verb = next((assignment[s] for s, r in roles.items() if r is SlotRole.ACTION and s in assignment), None)
    obj = next((assignment[s] for s, r in roles.items() if r is SlotRole.OBJECT and s in assignment), None)
    if verb is None or obj is None:
        return None
    return f"{concept_words(verb)} {concept_words(obj)}".lower()

"""
合成实例生成

每个实例预置一个标签组合：预置概念之间有强正断言（直接或经一个线索概念），
置信度中等；干扰概念置信度更高，但彼此之间是负断言。
生成后用穷举搜索确认预置组合就是能量最低的赋值，否则重试。
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np
from pydantic import ValidationError

from .config.defaults import (
    ENERGY_CHECK_TOLERANCE,
    HYPOTHESIS_DEFAULT_K_MAX,
    ORACLE_DEFAULT_BUDGET,
    SYNTH_DEFAULT_CUE_DENSITY,
    SYNTH_DEFAULT_INSTANCES,
    SYNTH_DEFAULT_K_CANDIDATES,
    SYNTH_DEFAULT_KG_SIZE,
    SYNTH_DEFAULT_MAX_RETRIES,
    SYNTH_DEFAULT_SLOTS,
    SYNTH_DISTRACTOR_CONFIDENCE,
    SYNTH_DISTRACTOR_WEIGHT,
    SYNTH_LABEL_NOISE_PROBABILITY,
    SYNTH_NOISE_CONCEPTS_MIN,
    SYNTH_NOISE_WEIGHT,
    SYNTH_PLANTED_CONFIDENCE,
    SYNTH_PLANTED_WEIGHT,
    SYNTH_RELATIONS,
    SYNTH_REVERSE_ASSERTION_PROBABILITY,
)
from .core.errors import IngestionError
from .core.models import AnswerDocument, Assertion, Candidate, HypothesisSet, InferenceParams, Slot
from .core.types import SlotRole
from .inference.hypotheses import dump_hypotheses
from .inference.oracle import oracle_search
from .knowledge.graph import KnowledgeGraph
from .knowledge.loaders import dump_tsv
from .rendering.captions import label_from_assignment
from .utils.logging import get_logger
from .utils.seeding import derive_rng, derive_seed

logger = get_logger(__name__)

_BASE_SLOTS: Tuple[Tuple[str, SlotRole, str], ...] = (
    ("action", SlotRole.ACTION, "act"),
    ("object", SlotRole.OBJECT, "obj"),
    ("subject", SlotRole.SUBJECT, "sub"),
)


def slot_layout(slots: int) -> List[Tuple[str, SlotRole, str]]:
    """(槽位标识, 角色, 概念前缀)；前两个槽位总是动作与物体"""
    layout = list(_BASE_SLOTS[:slots])
    for n in range(slots - len(layout)):
        layout.append((f"other{n}", SlotRole.OTHER, f"oth{n}"))
    return layout


@dataclass
class PlantedInstance:
    hypothesis: HypothesisSet
    assertions: List[Assertion]
    planted: Dict[str, str]
    via_cue: Optional[str] = None


@dataclass
class SyntheticSuite:
    assertions: List[Assertion] = field(default_factory=list)
    hypotheses: List[HypothesisSet] = field(default_factory=list)
    answers: List[AnswerDocument] = field(default_factory=list)
    unverified: int = 0

    def kg_text(self) -> str:
        return dump_tsv(self.assertions)

    def hypotheses_text(self) -> str:
        return dump_hypotheses(self.hypotheses)

    def answers_text(self) -> str:
        return dump_answers(self.answers)


def dump_answers(answers: Sequence[AnswerDocument]) -> str:
    return "".join(answer.to_json_line() for answer in answers)


def parse_answers(text: str) -> Dict[str, AnswerDocument]:
    """答案文件（JSON lines）-> {segment: answer}"""
    answers: Dict[str, AnswerDocument] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            answer = AnswerDocument.model_validate_json(line)
        except ValidationError as exc:
            raise IngestionError(f"答案文件第 {line_no} 行格式错误: {exc.errors()[0]['msg']}") from None
        answers[answer.segment] = answer
    return answers


def load_answers_file(path: Path) -> Dict[str, AnswerDocument]:
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise IngestionError(f"无法读取答案文件 {path}: {exc}") from exc
    return parse_answers(text)


def _uniform(rng: np.random.Generator, bounds: Tuple[float, float]) -> float:
    return round(float(rng.uniform(*bounds)), 4)


def _relation(rng: np.random.Generator) -> str:
    return SYNTH_RELATIONS[int(rng.integers(len(SYNTH_RELATIONS)))]


def plant_instance(
    index: int,
    rng: np.random.Generator,
    *,
    slots: int,
    k_candidates: int,
    cue_density: float,
    noise_concepts: Sequence[str],
) -> PlantedInstance:
    """生成一个实例（未验证）"""
    layout = slot_layout(slots)
    slot_models: List[Slot] = []
    planted: Dict[str, str] = {}
    distractors: List[List[str]] = []
    for slot_id, role, prefix in layout:
        names = [f"{prefix}{index:04d}x{j}" for j in range(k_candidates)]
        chosen = names[int(rng.integers(k_candidates))]
        candidates = [
            Candidate(
                concept=name,
                score=_uniform(rng, SYNTH_PLANTED_CONFIDENCE if name == chosen else SYNTH_DISTRACTOR_CONFIDENCE),
            )
            for name in names
        ]
        slot_models.append(Slot(id=slot_id, role=role, candidates=candidates))
        planted[slot_id] = chosen
        distractors.append([name for name in names if name != chosen])

    assertions: List[Assertion] = []
    via_cue: Optional[str] = None
    for s, t in itertools.combinations(range(len(layout)), 2):
        a, b = planted[layout[s][0]], planted[layout[t][0]]
        if rng.random() < cue_density:
            # 线索只有一条入边一条出边，插入后 Q 为 0
            cue = f"cue{index:04d}x{s}{t}"
            assertions.append(Assertion(relation=_relation(rng), start=a, end=cue, weight=_uniform(rng, SYNTH_PLANTED_WEIGHT)))
            assertions.append(Assertion(relation=_relation(rng), start=cue, end=b, weight=_uniform(rng, SYNTH_PLANTED_WEIGHT)))
            if (s, t) == (0, 1):
                via_cue = cue
        else:
            assertions.append(Assertion(relation=_relation(rng), start=a, end=b, weight=_uniform(rng, SYNTH_PLANTED_WEIGHT)))
            if rng.random() < SYNTH_REVERSE_ASSERTION_PROBABILITY:
                assertions.append(
                    Assertion(relation=_relation(rng), start=b, end=a, weight=_uniform(rng, SYNTH_PLANTED_WEIGHT))
                )
        for x in distractors[s]:
            for y in distractors[t]:
                assertions.append(Assertion(relation=_relation(rng), start=x, end=y, weight=_uniform(rng, SYNTH_DISTRACTOR_WEIGHT)))

    # 标签 -> 噪声：只影响有据生成器的键布局，不会产生线索
    for slot in slot_models:
        for candidate in slot.candidates:
            if rng.random() < SYNTH_LABEL_NOISE_PROBABILITY:
                target = noise_concepts[int(rng.integers(len(noise_concepts)))]
                assertions.append(
                    Assertion(relation=_relation(rng), start=candidate.concept, end=target, weight=_uniform(rng, SYNTH_NOISE_WEIGHT))
                )

    hypothesis = HypothesisSet(segment=f"seg{index:04d}", slots=slot_models)
    return PlantedInstance(hypothesis=hypothesis, assertions=assertions, planted=planted, via_cue=via_cue)


def verify_instance(
    instance: PlantedInstance,
    params: InferenceParams,
    budget: int = ORACLE_DEFAULT_BUDGET,
) -> Optional[float]:
    """预置赋值是唯一能量最低赋值时返回其能量，否则返回 None

    其它实例的概念互不相交，因此只用本实例的断言即可得到相同的能量。
    """
    kg = KnowledgeGraph.from_assertions(instance.assertions)
    ranked = oracle_search(instance.hypothesis, kg, params, budget)
    best = ranked[0]
    for interpretation in ranked:
        if interpretation.total > best.total + ENERGY_CHECK_TOLERANCE:
            break
        if interpretation.configuration.assignment() != instance.planted:
            return None
    return best.total


def _background_noise(
    rng: np.random.Generator,
    noise_concepts: Sequence[str],
    count: int,
    seen: Set[Tuple[str, str, str]],
) -> List[Assertion]:
    """噪声 -> 噪声断言，三元组不重复"""
    assertions: List[Assertion] = []
    attempts = 0
    while len(assertions) < count and attempts < count * 20:
        attempts += 1
        i, j = rng.choice(len(noise_concepts), size=2, replace=False)
        assertion = Assertion(
            relation=_relation(rng),
            start=noise_concepts[int(i)],
            end=noise_concepts[int(j)],
            weight=_uniform(rng, SYNTH_NOISE_WEIGHT),
        )
        if assertion.triple in seen:
            continue
        seen.add(assertion.triple)
        assertions.append(assertion)
    return assertions


def generate_suite(
    n_instances: int = SYNTH_DEFAULT_INSTANCES,
    slots: int = SYNTH_DEFAULT_SLOTS,
    k_candidates: int = SYNTH_DEFAULT_K_CANDIDATES,
    kg_size: int = SYNTH_DEFAULT_KG_SIZE,
    cue_density: float = SYNTH_DEFAULT_CUE_DENSITY,
    seed: int = 0,
    *,
    params: Optional[InferenceParams] = None,
    max_retries: int = SYNTH_DEFAULT_MAX_RETRIES,
    budget: int = ORACLE_DEFAULT_BUDGET,
) -> SyntheticSuite:
    """生成合成套件

    实例 i 的随机数由 derive_seed(seed, i) 派生，可单独复现；
    kg_size 为背景噪声断言数（不含实例自身的断言）。
    """
    if n_instances < 1:
        raise ValueError("n_instances 必须 >= 1")
    if slots < 2:
        raise ValueError("slots 必须 >= 2（动作与物体）")
    if not 1 <= k_candidates <= HYPOTHESIS_DEFAULT_K_MAX:
        raise ValueError(f"k_candidates 必须在 1-{HYPOTHESIS_DEFAULT_K_MAX} 之间")
    if kg_size < 0:
        raise ValueError("kg_size 不能为负")
    if not 0.0 <= cue_density <= 1.0:
        raise ValueError("cue_density 必须在 [0, 1] 之间")
    params = params or InferenceParams()
    noise_concepts = [f"noise{m:04d}" for m in range(max(SYNTH_NOISE_CONCEPTS_MIN, math.ceil(kg_size / 4)))]

    suite = SyntheticSuite()
    for index in range(n_instances):
        rng = derive_rng(derive_seed(seed, index))
        energy: Optional[float] = None
        for attempt in range(max(1, max_retries)):
            instance = plant_instance(
                index,
                rng,
                slots=slots,
                k_candidates=k_candidates,
                cue_density=cue_density,
                noise_concepts=noise_concepts,
            )
            energy = verify_instance(instance, params, budget)
            if energy is not None:
                break
            logger.debug("synth_retry", index=index, attempt=attempt)
        if energy is None:
            suite.unverified += 1
            logger.warning("synth_unverified", index=index, segment=instance.hypothesis.segment)
            kg = KnowledgeGraph.from_assertions(instance.assertions)
            energy = oracle_search(instance.hypothesis, kg, params, budget)[0].total
        roles = {slot.id: slot.role for slot in instance.hypothesis.slots}
        suite.assertions.extend(instance.assertions)
        suite.hypotheses.append(instance.hypothesis)
        suite.answers.append(
            AnswerDocument(
                segment=instance.hypothesis.segment,
                assignment=instance.planted,
                label=label_from_assignment(instance.planted, roles) or "",
                oracle_energy=energy,
                via_cue=instance.via_cue,
            )
        )

    seen = {assertion.triple for assertion in suite.assertions}
    suite.assertions.extend(_background_noise(derive_rng(derive_seed(seed, n_instances)), noise_concepts, kg_size, seen))
    logger.info(
        "synth_generated",
        instances=n_instances,
        assertions=len(suite.assertions),
        unverified=suite.unverified,
    )
    return suite

"""
退火与穷举的一致性评估

逐实例比较退火最优能量与穷举最低能量，以及 top-1 标签与预置答案，输出 TSV 报告。
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass, field
from typing import List, Mapping, Optional, Sequence

from .config.defaults import ENERGY_CHECK_TOLERANCE, EVAL_REPORT_COLUMNS, ORACLE_DEFAULT_BUDGET, RUNNER_DEFAULT_WORKERS
from .core.errors import SearchBudgetExceeded
from .core.models import AnswerDocument, HypothesisSet, InferenceParams
from .engine import map_in_threads
from .inference.annealing import anneal
from .inference.oracle import oracle_search
from .knowledge.graph import KnowledgeGraph
from .rendering.captions import label_from_assignment
from .utils.logging import get_logger

logger = get_logger(__name__)

MISSING = "NA"


@dataclass(frozen=True)
class EvalRow:
    segment: str
    anneal_energy: float
    oracle_energy: Optional[float]  # None: 穷举超出预算被拒绝
    anneal_label: Optional[str]
    planted_label: Optional[str]
    seconds: float

    @property
    def energy_gap(self) -> Optional[float]:
        if self.oracle_energy is None:
            return None
        return self.anneal_energy - self.oracle_energy

    @property
    def hit_optimum(self) -> Optional[bool]:
        gap = self.energy_gap
        return None if gap is None else gap <= ENERGY_CHECK_TOLERANCE

    @property
    def label_match(self) -> bool:
        return self.planted_label is not None and self.anneal_label == self.planted_label


def _energy(value: Optional[float]) -> str:
    return MISSING if value is None else f"{value:.6f}"


def _flag(value: Optional[bool]) -> str:
    return MISSING if value is None else str(int(value))


@dataclass
class EvalReport:
    rows: List[EvalRow] = field(default_factory=list)

    @property
    def judged(self) -> List[EvalRow]:
        """穷举未被拒绝的实例"""
        return [row for row in self.rows if row.oracle_energy is not None]

    @property
    def refused(self) -> int:
        return len(self.rows) - len(self.judged)

    @property
    def hits(self) -> int:
        return sum(1 for row in self.judged if row.hit_optimum)

    @property
    def hit_rate(self) -> Optional[float]:
        judged = self.judged
        return self.hits / len(judged) if judged else None

    @property
    def label_agreement(self) -> Optional[float]:
        labelled = [row for row in self.rows if row.planted_label is not None]
        return sum(1 for row in labelled if row.label_match) / len(labelled) if labelled else None

    @property
    def mean_gap(self) -> Optional[float]:
        gaps = [row.energy_gap for row in self.judged if row.energy_gap is not None]
        return statistics.fmean(gaps) if gaps else None

    @property
    def median_seconds(self) -> Optional[float]:
        return statistics.median(row.seconds for row in self.rows) if self.rows else None

    def to_tsv(self) -> str:
        """表头 + 每实例一行 + ALL 汇总行

        ALL 行：能量列为均值，hit_optimum / label_match 为比例，seconds 为中位数。
        """
        lines = ["\t".join(EVAL_REPORT_COLUMNS)]
        for row in self.rows:
            lines.append("\t".join((
                row.segment,
                _energy(row.anneal_energy),
                _energy(row.oracle_energy),
                _energy(row.energy_gap),
                _flag(row.hit_optimum),
                row.anneal_label or MISSING,
                row.planted_label or MISSING,
                _flag(row.label_match),
                f"{row.seconds:.4f}",
            )))
        judged = self.judged
        lines.append("\t".join((
            "ALL",
            _energy(statistics.fmean(row.anneal_energy for row in self.rows) if self.rows else None),
            _energy(statistics.fmean(row.oracle_energy for row in judged) if judged else None),
            _energy(self.mean_gap),
            _energy(self.hit_rate),
            MISSING,
            MISSING,
            _energy(self.label_agreement),
            _energy(self.median_seconds),
        )))
        return "\n".join(lines) + "\n"


def evaluate_instance(
    index: int,
    h: HypothesisSet,
    kg: KnowledgeGraph,
    params: InferenceParams,
    answer: Optional[AnswerDocument] = None,
    budget: int = ORACLE_DEFAULT_BUDGET,
) -> EvalRow:
    """seconds 只计退火耗时"""
    started = time.perf_counter()
    result = anneal(h, kg, params, segment_index=index)
    seconds = time.perf_counter() - started
    best = result.best
    assert best is not None
    roles = {slot.id: slot.role for slot in h.slots}
    try:
        oracle_energy: Optional[float] = oracle_search(h, kg, params, budget)[0].total
    except SearchBudgetExceeded:
        oracle_energy = None
    return EvalRow(
        segment=h.segment,
        anneal_energy=best.total,
        oracle_energy=oracle_energy,
        anneal_label=label_from_assignment(best.configuration.assignment(), roles),
        planted_label=answer.label if answer is not None else None,
        seconds=seconds,
    )


async def evaluate_suite(
    kg: KnowledgeGraph,
    hypotheses: Sequence[HypothesisSet],
    answers: Mapping[str, AnswerDocument],
    params: InferenceParams,
    *,
    budget: int = ORACLE_DEFAULT_BUDGET,
    workers: int = RUNNER_DEFAULT_WORKERS,
) -> EvalReport:
    def run_one(index: int, h: HypothesisSet) -> EvalRow:
        return evaluate_instance(index, h, kg, params, answers.get(h.segment), budget)

    rows = await map_in_threads(run_one, hypotheses, workers)
    report = EvalReport(rows=rows)
    logger.info(
        "eval_finished",
        instances=len(rows),
        hits=report.hits,
        refused=report.refused,
        label_agreement=report.label_agreement,
    )
    return report

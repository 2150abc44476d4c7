"""
片段批处理引擎
使用 anyio 工作线程并行处理片段，结果按输入顺序返回
"""

from __future__ import annotations

import time
from typing import Callable, List, Optional, Sequence, Tuple, TypeVar, cast

import anyio

from .config.defaults import ORACLE_DEFAULT_BUDGET, RUNNER_DEFAULT_WORKERS
from .core.errors import MissingRoleError
from .core.models import (
    HypothesisSet,
    InferenceParams,
    InterpretationDocument,
    RunResult,
    SegmentDocument,
    SegmentResult,
    TraceSummary,
)
from .core.types import ExitCode, OutputFormat
from .inference.annealing import Interpretation, SearchTrace, anneal
from .inference.oracle import oracle_search
from .knowledge.graph import KnowledgeGraph
from .pattern.configuration import format_semantic_content, semantic_content
from .rendering.captions import VerbInflector, to_caption, to_label
from .rendering.scorers import SentenceScorer, UniformScorer
from .rendering.serialize import to_document, to_dot
from .utils.logging import get_logger, segment_context

logger = get_logger(__name__)

SearchFn = Callable[[int, HypothesisSet], Tuple[List[Interpretation], Optional[SearchTrace]]]
T = TypeVar("T")
R = TypeVar("R")


async def map_in_threads(fn: Callable[[int, T], R], items: Sequence[T], workers: int) -> List[R]:
    """fn(index, item) 在最多 workers 个线程中执行；结果按输入顺序返回"""
    limiter = anyio.CapacityLimiter(workers)
    results: List[Optional[R]] = [None] * len(items)

    async def worker(index: int, item: T) -> None:
        results[index] = await anyio.to_thread.run_sync(fn, index, item, limiter=limiter)

    async with anyio.create_task_group() as tg:
        for index, item in enumerate(items):
            tg.start_soon(worker, index, item)
    return cast(List[R], results)


def _safe_label(interpretation: Interpretation) -> Optional[str]:
    try:
        return to_label(interpretation.configuration)
    except MissingRoleError:
        return None


def interpretation_document(interpretation: Interpretation) -> InterpretationDocument:
    c = interpretation.configuration
    return InterpretationDocument(
        rank=interpretation.rank,
        energy=interpretation.total,
        probability_weight=interpretation.energy.probability_weight,
        semantic_content=format_semantic_content(semantic_content(c)),
        label=_safe_label(interpretation),
        grounded_connected=c.connected_grounded(),
        configuration=to_document(c),
    )


def trace_summary(trace: SearchTrace) -> TraceSummary:
    return TraceSummary(
        iterations=trace.iterations,
        accepted=trace.accepted,
        acceptance_rate=trace.acceptance_rate,
        best_energy=trace.best_energy if trace.best_energy is not None else 0.0,
        moves=trace.move_counts(),
    )


class InterpretationEngine:
    """片段解释引擎"""

    def __init__(
        self,
        kg: KnowledgeGraph,
        params: InferenceParams,
        *,
        workers: int = RUNNER_DEFAULT_WORKERS,
        output_format: OutputFormat = OutputFormat.JSON,
        scorer: Optional[SentenceScorer] = None,
        inflector: Optional[VerbInflector] = None,
        oracle_budget: int = ORACLE_DEFAULT_BUDGET,
    ):
        if workers < 1:
            raise ValueError("workers 必须 >= 1")
        self.kg = kg
        self.params = params
        self.workers = workers
        self.output_format = output_format
        self.scorer = scorer or UniformScorer()
        self.inflector = inflector or VerbInflector()
        self.oracle_budget = oracle_budget

    # 搜索
    def _anneal(self, index: int, h: HypothesisSet) -> Tuple[List[Interpretation], Optional[SearchTrace]]:
        result = anneal(h, self.kg, self.params, segment_index=index)
        return result.interpretations, result.trace

    def _oracle(self, index: int, h: HypothesisSet) -> Tuple[List[Interpretation], Optional[SearchTrace]]:
        ranked = oracle_search(h, self.kg, self.params, self.oracle_budget)
        return ranked[: self.params.top_n], None

    # 渲染
    def render(self, segment: str, interpretations: Sequence[Interpretation], document: SegmentDocument) -> str:
        """按输出格式渲染一个片段；json 为单行，其余格式每个解释一行（dot 每个解释一张图）"""
        fmt = self.output_format
        if fmt is OutputFormat.JSON:
            return document.model_dump_json()
        if fmt is OutputFormat.DOT:
            return "\n".join(
                to_dot(item.configuration, name=f"{segment}_{item.rank}") for item in interpretations
            ).rstrip("\n")
        lines = []
        for item, doc in zip(interpretations, document.interpretations):
            if fmt is OutputFormat.CAPTION:
                text = to_caption(item.configuration, self.scorer, self.inflector).sentence
            elif fmt is OutputFormat.LABEL:
                text = to_label(item.configuration)
            else:
                text = doc.semantic_content
            lines.append(f"{segment}\t{item.rank}\t{item.total:.6f}\t{text}")
        return "\n".join(lines)

    def _process(self, index: int, h: HypothesisSet, search: SearchFn) -> SegmentResult:
        with segment_context(h.segment, index):
            return self._process_bound(index, h, search)

    def _process_bound(self, index: int, h: HypothesisSet, search: SearchFn) -> SegmentResult:
        started = time.perf_counter()
        logger.debug("segment_started")
        try:
            interpretations, trace = search(index, h)
            document = SegmentDocument(
                segment=h.segment,
                interpretations=[interpretation_document(item) for item in interpretations],
                trace=trace_summary(trace) if trace is not None else None,
            )
            output = self.render(h.segment, interpretations, document)
        except Exception as e:
            exit_code = getattr(e, "exit_code", ExitCode.RUNTIME)
            logger.warning("segment_failed", error=str(e))
            return SegmentResult(
                index=index,
                segment=h.segment,
                success=False,
                message=f"片段 {h.segment} 处理失败: {e}",
                error_type=type(e).__name__,
                exit_code=int(exit_code),
                seconds=time.perf_counter() - started,
            )
        seconds = time.perf_counter() - started
        logger.debug("segment_finished", interpretations=len(interpretations))
        return SegmentResult(
            index=index,
            segment=h.segment,
            success=True,
            message="解释完成",
            document=document,
            output=output,
            seconds=seconds,
        )

    def interpret_segment(self, index: int, h: HypothesisSet) -> SegmentResult:
        return self._process(index, h, self._anneal)

    def oracle_segment(self, index: int, h: HypothesisSet) -> SegmentResult:
        return self._process(index, h, self._oracle)

    async def run(self, hypotheses: Sequence[HypothesisSet], *, oracle: bool = False) -> RunResult:
        """并行处理全部片段，workers 个线程上限；返回顺序与输入一致"""
        handler = self.oracle_segment if oracle else self.interpret_segment
        segments = await map_in_threads(handler, hypotheses, self.workers)
        stats = {
            "segments": len(segments),
            "succeeded": sum(1 for result in segments if result.success),
            "failed": sum(1 for result in segments if not result.success),
            "mode": "oracle" if oracle else "anneal",
            "workers": self.workers,
        }
        logger.info("run_finished", **stats)
        return RunResult(segments=segments, stats=stats)


# 便利函数
async def interpret_segments(
    kg: KnowledgeGraph,
    hypotheses: Sequence[HypothesisSet],
    params: InferenceParams,
    **options,
) -> RunResult:
    """对全部片段运行退火的便利函数"""
    engine = InterpretationEngine(kg, params, **options)
    return await engine.run(hypotheses)

"""
命令行入口
使用 typer 和 rich 提供命令行界面；结果写 stdout（或 --out），表格与日志写 stderr
"""

from __future__ import annotations

import functools
from pathlib import Path
from typing import Annotated, List, Optional

import anyio
import typer
import yaml
from pydantic import ValidationError
from rich.table import Table

from . import __version__
from .cli_options import (
    BudgetOpt,
    ChainsOpt,
    CoolingRatioOpt,
    CueCandidatesOpt,
    CuesPerPairOpt,
    CueStrictOpt,
    DebugChecksOpt,
    HypothesesPath,
    InitialTemperatureOpt,
    IterationsOpt,
    KCostOpt,
    KgFormatOpt,
    KgPath,
    LocalRatioOpt,
    MaxSemanticBondsOpt,
    MSwapOpt,
    OutOpt,
    OutputFormatOpt,
    QCountInBondsOpt,
    ScorerCountsOpt,
    SeedOpt,
    SymmetrizeOpt,
    TopNOpt,
    VerbOverridesOpt,
    WildcardOpt,
    WorkersOpt,
    build_params,
    console,
    current_settings,
    fail,
    global_config,
    load_inputs,
    pick,
)
from .config.settings import AppSettings
from .core.errors import InterpretationError
from .core.models import HypothesisSet, InferenceParams, RunResult
from .core.types import ExitCode, Failure, OutputFormat
from .engine import InterpretationEngine
from .filesystem import render_run, write_run_output
from .knowledge.graph import KnowledgeGraph
from .rendering.captions import VerbInflector
from .rendering.scorers import load_scorer
from .utils.logging import configure_logging, get_logger

# 创建应用
app = typer.Typer(
    name="pattern-interp",
    help="模式理论视频片段解释：假设 + 常识知识图谱 -> 排名解释、字幕与活动标签",
    add_completion=False,
    rich_markup_mode="rich",
)

logger = get_logger(__name__)


# 回调函数
def version_callback(value: bool):
    """版本回调"""
    if value:
        typer.echo(f"pattern-interp {__version__}")
        raise typer.Exit()


# 全局选项
@app.callback()
def main(
    version: Annotated[
        Optional[bool],
        typer.Option("--version", "-v", callback=version_callback, is_eager=True, help="显示版本信息"),
    ] = None,
    verbose: Annotated[bool, typer.Option("--verbose", help="详细输出 (DEBUG 日志)")] = False,
    config_file: Annotated[
        Optional[Path],
        typer.Option("--config-file", "-c", exists=True, dir_okay=False, help="从配置文件加载设置 (YAML/JSON)"),
    ] = None,
):
    """模式理论视频片段解释"""
    configure_logging(verbose)
    try:
        settings = AppSettings.from_file(config_file)
    except (OSError, yaml.YAMLError, ValidationError, ValueError) as e:
        fail(f"读取配置文件失败: {e}", ExitCode.USAGE)
    if settings.verbose and not verbose:
        configure_logging(True)
    global_config.verbose = verbose or settings.verbose
    global_config.settings = settings
    logger.debug("cli_started", verbose=global_config.verbose, config_file=str(config_file) if config_file else None)


# 显示函数
def display_run_summary(run: RunResult, title: str) -> None:
    table = Table(title=title)
    table.add_column("片段", style="cyan")
    table.add_column("状态")
    table.add_column("最优能量", justify="right", style="green")
    table.add_column("top-1 标签")
    table.add_column("解释数", justify="right")
    table.add_column("耗时 (s)", justify="right")
    for result in run.segments:
        document = result.document
        top = document.interpretations[0] if document and document.interpretations else None
        table.add_row(
            result.segment,
            "[green]✓[/green]" if result.success else f"[red]✗ {result.error_type}[/red]",
            f"{result.best_energy:.4f}" if result.best_energy is not None else "-",
            (top.label or "-") if top else "-",
            str(len(document.interpretations)) if document else "0",
            f"{result.seconds:.2f}",
        )
    console.print(table)


def _run_engine(
    kg: KnowledgeGraph,
    hypotheses: List[HypothesisSet],
    params: InferenceParams,
    *,
    oracle: bool,
    workers: Optional[int],
    output_format: Optional[OutputFormat],
    scorer_counts: Optional[Path],
    verb_overrides: Optional[Path],
    out: Optional[Path],
    budget: Optional[int] = None,
) -> None:
    settings = current_settings()
    try:
        scorer = load_scorer(pick(scorer_counts, settings.scorer_counts))
        overrides_path = pick(verb_overrides, settings.verb_overrides)
        inflector = VerbInflector.from_file(overrides_path) if overrides_path else VerbInflector()
    except InterpretationError as e:
        fail(str(e), e.exit_code)

    engine = InterpretationEngine(
        kg,
        params,
        workers=pick(workers, settings.workers),
        output_format=pick(output_format, settings.output_format),
        scorer=scorer,
        inflector=inflector,
        oracle_budget=pick(budget, settings.oracle_budget),
    )
    logger.info("run_started", segments=len(hypotheses), oracle=oracle, workers=engine.workers)
    run = anyio.run(functools.partial(engine.run, hypotheses, oracle=oracle))

    if out is not None:
        written = anyio.run(write_run_output, out, run)
        if isinstance(written, Failure):
            fail(written.error, ExitCode.RUNTIME)
    else:
        typer.echo(render_run(run), nl=False)

    display_run_summary(run, "穷举结果" if oracle else "解释结果")
    if not run.success:
        first = run.failures[0]
        fail(first.message, first.exit_code)


@app.command("interpret")
def interpret_command(
    kg: KgPath,
    hypotheses: HypothesesPath,
    kg_format: KgFormatOpt = None,
    symmetrize: SymmetrizeOpt = None,
    iterations: IterationsOpt = None,
    initial_temperature: InitialTemperatureOpt = None,
    cooling_ratio: CoolingRatioOpt = None,
    k_cost: KCostOpt = None,
    m_swap: MSwapOpt = None,
    cues_per_pair: CuesPerPairOpt = None,
    cue_candidates: CueCandidatesOpt = None,
    top_n: TopNOpt = None,
    seed: SeedOpt = None,
    local_ratio: LocalRatioOpt = None,
    max_semantic_bonds: MaxSemanticBondsOpt = None,
    q_count_in_bonds: QCountInBondsOpt = None,
    cue_strict: CueStrictOpt = None,
    chains: ChainsOpt = None,
    wildcard_related_to: WildcardOpt = None,
    debug_checks: DebugChecksOpt = None,
    workers: WorkersOpt = None,
    output_format: OutputFormatOpt = None,
    scorer_counts: ScorerCountsOpt = None,
    verb_overrides: VerbOverridesOpt = None,
    out: OutOpt = None,
):
    """对每个片段运行模拟退火，输出 top-N 解释

    Examples:
      interpret --kg kg.tsv --hypotheses segs.jsonl
      interpret --kg kg.tsv --hypotheses segs.jsonl --output-format caption --seed 7
    """
    params = build_params(
        iterations=iterations,
        initial_temperature=initial_temperature,
        cooling_ratio=cooling_ratio,
        k_cost=k_cost,
        m_swap=m_swap,
        cues_per_pair=cues_per_pair,
        cue_candidates=cue_candidates,
        top_n=top_n,
        rng_seed=seed,
        local_ratio=local_ratio,
        max_semantic_bonds=max_semantic_bonds,
        q_count_in_bonds=q_count_in_bonds,
        cue_strict=cue_strict,
        chains=chains,
        wildcard_related_to=wildcard_related_to,
        debug_checks=debug_checks,
    )
    kg_graph, segments = load_inputs(kg, hypotheses, kg_format, symmetrize)
    _run_engine(
        kg_graph,
        segments,
        params,
        oracle=False,
        workers=workers,
        output_format=output_format,
        scorer_counts=scorer_counts,
        verb_overrides=verb_overrides,
        out=out,
    )


@app.command("oracle")
def oracle_command(
    kg: KgPath,
    hypotheses: HypothesesPath,
    kg_format: KgFormatOpt = None,
    symmetrize: SymmetrizeOpt = None,
    k_cost: KCostOpt = None,
    cues_per_pair: CuesPerPairOpt = None,
    cue_candidates: CueCandidatesOpt = None,
    top_n: TopNOpt = None,
    max_semantic_bonds: MaxSemanticBondsOpt = None,
    q_count_in_bonds: QCountInBondsOpt = None,
    cue_strict: CueStrictOpt = None,
    wildcard_related_to: WildcardOpt = None,
    budget: BudgetOpt = None,
    workers: WorkersOpt = None,
    output_format: OutputFormatOpt = None,
    scorer_counts: ScorerCountsOpt = None,
    verb_overrides: VerbOverridesOpt = None,
    out: OutOpt = None,
):
    """穷举全部配置（验证用），超出 --budget 的片段被拒绝"""
    params = build_params(
        k_cost=k_cost,
        cues_per_pair=cues_per_pair,
        cue_candidates=cue_candidates,
        top_n=top_n,
        max_semantic_bonds=max_semantic_bonds,
        q_count_in_bonds=q_count_in_bonds,
        cue_strict=cue_strict,
        wildcard_related_to=wildcard_related_to,
    )
    kg_graph, segments = load_inputs(kg, hypotheses, kg_format, symmetrize)
    _run_engine(
        kg_graph,
        segments,
        params,
        oracle=True,
        workers=workers,
        output_format=output_format,
        scorer_counts=scorer_counts,
        verb_overrides=verb_overrides,
        out=out,
        budget=budget,
    )


# synth / eval 子命令
from .cli_synth import eval_command, synth_command  # noqa: E402

app.command("synth")(synth_command)
app.command("eval")(eval_command)


# 主入口
if __name__ == "__main__":
    app()

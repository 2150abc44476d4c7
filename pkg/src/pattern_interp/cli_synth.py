"""
合成套件与评估子命令

从主 CLI 拆出，保持 pattern_interp/cli.py 只包含解释相关命令。
"""

from __future__ import annotations

import functools
from pathlib import Path
from typing import Annotated, Optional

import anyio
import typer
from rich.table import Table

from .cli_options import (
    BudgetOpt,
    ChainsOpt,
    CoolingRatioOpt,
    CueCandidatesOpt,
    CuesPerPairOpt,
    CueStrictOpt,
    HypothesesPath,
    InitialTemperatureOpt,
    IterationsOpt,
    KCostOpt,
    KgFormatOpt,
    KgPath,
    LocalRatioOpt,
    MaxSemanticBondsOpt,
    MSwapOpt,
    QCountInBondsOpt,
    SeedOpt,
    SymmetrizeOpt,
    TopNOpt,
    WildcardOpt,
    WorkersOpt,
    build_params,
    console,
    current_settings,
    fail,
    load_inputs,
    pick,
)
from .config.defaults import (
    HYPOTHESIS_DEFAULT_K_MAX,
    SYNTH_DEFAULT_CUE_DENSITY,
    SYNTH_DEFAULT_INSTANCES,
    SYNTH_DEFAULT_K_CANDIDATES,
    SYNTH_DEFAULT_KG_SIZE,
    SYNTH_DEFAULT_MAX_RETRIES,
    SYNTH_DEFAULT_SLOTS,
)
from .core.errors import InterpretationError
from .core.types import ExitCode, Failure
from .evaluation import EvalReport, evaluate_suite
from .filesystem import write_report, write_suite
from .synth import generate_suite, load_answers_file


def _ratio(value: Optional[float]) -> str:
    return "-" if value is None else f"{value:.2%}"


def display_eval_summary(report: EvalReport) -> None:
    table = Table(title="退火 / 穷举一致性")
    table.add_column("指标", style="cyan")
    table.add_column("值", style="green")
    table.add_row("实例数", str(len(report.rows)))
    table.add_row("命中最优", f"{report.hits}/{len(report.judged)} ({_ratio(report.hit_rate)})")
    table.add_row("标签一致率", _ratio(report.label_agreement))
    table.add_row("平均能量差", "-" if report.mean_gap is None else f"{report.mean_gap:.6f}")
    table.add_row("耗时中位数 (s)", "-" if report.median_seconds is None else f"{report.median_seconds:.3f}")
    table.add_row("穷举被拒绝", str(report.refused))
    console.print(table)


def synth_command(
    out_dir: Annotated[Path, typer.Option("--out-dir", file_okay=False, help="输出目录")],
    instances: Annotated[int, typer.Option("--instances", min=1, help="实例数")] = SYNTH_DEFAULT_INSTANCES,
    slots: Annotated[int, typer.Option("--slots", min=2, help="每个实例的槽位数")] = SYNTH_DEFAULT_SLOTS,
    k_candidates: Annotated[
        int, typer.Option("--k-candidates", min=1, max=HYPOTHESIS_DEFAULT_K_MAX, help="每槽候选数")
    ] = SYNTH_DEFAULT_K_CANDIDATES,
    kg_size: Annotated[int, typer.Option("--kg-size", min=0, help="背景噪声断言数")] = SYNTH_DEFAULT_KG_SIZE,
    cue_density: Annotated[
        float, typer.Option("--cue-density", min=0.0, max=1.0, help="预置对经线索连接的概率")
    ] = SYNTH_DEFAULT_CUE_DENSITY,
    seed: Annotated[int, typer.Option("--seed", min=0, help="随机种子")] = 0,
    max_retries: Annotated[
        int, typer.Option("--max-retries", min=1, help="预置验证失败时的重试次数")
    ] = SYNTH_DEFAULT_MAX_RETRIES,
):
    """生成合成知识图谱、假设与预置答案

    Examples:
      synth --out-dir suite --instances 100 --seed 1
      synth --out-dir suite --cue-density 0
    """
    params = build_params()
    suite = generate_suite(
        instances,
        slots,
        k_candidates,
        kg_size,
        cue_density,
        seed,
        params=params,
        max_retries=max_retries,
        budget=current_settings().oracle_budget,
    )
    written = anyio.run(write_suite, out_dir, suite)
    if isinstance(written, Failure):
        fail(written.error, ExitCode.RUNTIME)

    table = Table(title="合成套件")
    table.add_column("属性", style="cyan")
    table.add_column("值", style="green")
    table.add_row("实例数", str(len(suite.hypotheses)))
    table.add_row("断言数", str(len(suite.assertions)))
    table.add_row("经线索的预置对", str(sum(1 for answer in suite.answers if answer.via_cue)))
    table.add_row("未通过验证", str(suite.unverified))
    table.add_row("输出目录", str(out_dir))
    console.print(table)


def eval_command(
    kg: KgPath,
    hypotheses: HypothesesPath,
    answers: Annotated[
        Path, typer.Option("--answers", exists=True, dir_okay=False, readable=True, help="预置答案文件 (JSON lines)")
    ],
    kg_format: KgFormatOpt = None,
    symmetrize: SymmetrizeOpt = None,
    iterations: IterationsOpt = None,
    initial_temperature: InitialTemperatureOpt = None,
    cooling_ratio: CoolingRatioOpt = None,
    k_cost: KCostOpt = None,
    m_swap: MSwapOpt = None,
    cues_per_pair: CuesPerPairOpt = None,
    cue_candidates: CueCandidatesOpt = None,
    seed: SeedOpt = None,
    local_ratio: LocalRatioOpt = None,
    max_semantic_bonds: MaxSemanticBondsOpt = None,
    q_count_in_bonds: QCountInBondsOpt = None,
    cue_strict: CueStrictOpt = None,
    chains: ChainsOpt = None,
    top_n: TopNOpt = None,
    wildcard_related_to: WildcardOpt = None,
    budget: BudgetOpt = None,
    workers: WorkersOpt = None,
    report: Annotated[Optional[Path], typer.Option("--report", help="TSV 报告路径（默认 stdout）")] = None,
):
    """比较退火与穷举：能量差、命中率与标签一致率"""
    params = build_params(
        iterations=iterations,
        initial_temperature=initial_temperature,
        cooling_ratio=cooling_ratio,
        k_cost=k_cost,
        m_swap=m_swap,
        cues_per_pair=cues_per_pair,
        cue_candidates=cue_candidates,
        rng_seed=seed,
        local_ratio=local_ratio,
        max_semantic_bonds=max_semantic_bonds,
        q_count_in_bonds=q_count_in_bonds,
        cue_strict=cue_strict,
        chains=chains,
        top_n=top_n,
        wildcard_related_to=wildcard_related_to,
    )
    kg_graph, segments = load_inputs(kg, hypotheses, kg_format, symmetrize)
    try:
        planted = load_answers_file(answers)
    except InterpretationError as e:
        fail(str(e), e.exit_code)

    settings = current_settings()
    result = anyio.run(
        functools.partial(
            evaluate_suite,
            kg_graph,
            segments,
            planted,
            params,
            budget=pick(budget, settings.oracle_budget),
            workers=pick(workers, settings.workers),
        )
    )
    if report is not None:
        written = anyio.run(write_report, report, result)
        if isinstance(written, Failure):
            fail(written.error, ExitCode.RUNTIME)
    else:
        typer.echo(result.to_tsv(), nl=False)
    display_eval_summary(result)

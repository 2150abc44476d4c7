"""
CLI 公共部分：控制台、全局状态、共享选项与输入加载

interpret / oracle / eval 共用同一组推断参数选项（与 InferenceParams 字段同名）。
"""

from __future__ import annotations

from pathlib import Path
from typing import Annotated, Any, List, NoReturn, Optional, Set

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.markup import escape

from .config.settings import AppSettings
from .core.errors import InterpretationError
from .core.models import HypothesisSet, InferenceParams
from .core.types import ExitCode, KGFormat, OutputFormat
from .inference.hypotheses import load_hypotheses_file
from .knowledge.graph import KnowledgeGraph
from .knowledge.loaders import load_kg_file
from .utils.logging import get_logger

# 表格与诊断信息走 stderr，stdout 只写结果
console = Console(stderr=True)

logger = get_logger(__name__)


class GlobalConfig:
    verbose: bool = False
    settings: Optional[AppSettings] = None


global_config = GlobalConfig()


def current_settings() -> AppSettings:
    if global_config.settings is None:
        global_config.settings = AppSettings()
    return global_config.settings


def fail(message: str, code: ExitCode | int = ExitCode.RUNTIME) -> NoReturn:
    """打印一行红色诊断并以给定退出码结束"""
    first_line = str(message).strip().splitlines()[0] if str(message).strip() else "未知错误"
    console.print(f"[red]{escape(first_line)}[/red]", soft_wrap=True)
    logger.debug("cli_failed", exit_code=int(code), message=first_line)
    raise typer.Exit(int(code))


def split_list(value: Optional[str]) -> Set[str]:
    """逗号分隔列表 -> 集合"""
    if not value:
        return set()
    return {item.strip() for item in value.split(",") if item.strip()}


# 输入文件
KgPath = Annotated[Path, typer.Option("--kg", exists=True, dir_okay=False, readable=True, help="知识图谱文件")]
HypothesesPath = Annotated[
    Path, typer.Option("--hypotheses", exists=True, dir_okay=False, readable=True, help="假设文件 (JSON lines)")
]
KgFormatOpt = Annotated[Optional[KGFormat], typer.Option("--kg-format", help="知识图谱格式 (tsv/conceptnet)")]
SymmetrizeOpt = Annotated[Optional[str], typer.Option("--symmetrize", help="加载时物化反向边的关系，逗号分隔")]

# 推断参数（未给出时取配置文件/环境变量/默认值）
IterationsOpt = Annotated[Optional[int], typer.Option("--iterations", min=1, help="退火迭代次数")]
InitialTemperatureOpt = Annotated[Optional[float], typer.Option("--initial-temperature", help="初始温度 T0")]
CoolingRatioOpt = Annotated[Optional[float], typer.Option("--cooling-ratio", help="降温系数 α (0,1)")]
KCostOpt = Annotated[Optional[float], typer.Option("--k-cost", help="开放键代价常数 k")]
MSwapOpt = Annotated[Optional[int], typer.Option("--m-swap", min=1, help="局部提议的候选采样数 m")]
CuesPerPairOpt = Annotated[Optional[int], typer.Option("--cues-per-pair", min=0, help="每个有序对最多插入的线索数")]
CueCandidatesOpt = Annotated[Optional[int], typer.Option("--cue-candidates", min=1, help="线索候选池大小")]
TopNOpt = Annotated[Optional[int], typer.Option("--top-n", min=1, help="输出的解释数")]
SeedOpt = Annotated[Optional[int], typer.Option("--seed", min=0, help="随机种子")]
LocalRatioOpt = Annotated[Optional[float], typer.Option("--local-ratio", help="局部提议概率")]
MaxSemanticBondsOpt = Annotated[Optional[int], typer.Option("--max-semantic-bonds", min=1, help="每个方向的语义键上限")]
QCountInBondsOpt = Annotated[
    Optional[bool], typer.Option("--q-count-in-bonds/--no-q-count-in-bonds", help="Q 同时计入无据生成器的开放入键")
]
CueStrictOpt = Annotated[Optional[bool], typer.Option("--cue-strict/--no-cue-strict", help="反向直接断言也排除线索")]
ChainsOpt = Annotated[Optional[int], typer.Option("--chains", min=1, help="每个片段的独立链数")]
WildcardOpt = Annotated[
    Optional[bool], typer.Option("--wildcard-related-to/--no-wildcard-related-to", help="RelatedTo 匹配任意关系")
]
DebugChecksOpt = Annotated[Optional[bool], typer.Option("--debug-checks/--no-debug-checks", help="每步校验配置")]

# 运行与输出
WorkersOpt = Annotated[Optional[int], typer.Option("--workers", min=1, help="并行片段数")]
OutputFormatOpt = Annotated[Optional[OutputFormat], typer.Option("--output-format", help="输出格式")]
ScorerCountsOpt = Annotated[
    Optional[Path], typer.Option("--scorer-counts", exists=True, dir_okay=False, help="句子打分词频文件 (TSV)")
]
VerbOverridesOpt = Annotated[
    Optional[Path], typer.Option("--verb-overrides", exists=True, dir_okay=False, help="动词变形覆盖 (YAML)")
]
OutOpt = Annotated[Optional[Path], typer.Option("--out", help="输出文件（默认 stdout）")]
BudgetOpt = Annotated[Optional[int], typer.Option("--budget", min=1, help="穷举状态数上限")]


def build_params(**overrides: Any) -> InferenceParams:
    """命令行 > 配置文件 > 环境变量 > 默认值"""
    try:
        return current_settings().inference_params(**overrides)
    except ValidationError as e:
        errors = "; ".join(f"{'.'.join(str(x) for x in err['loc'])}: {err['msg']}" for err in e.errors())
        fail(f"参数非法: {errors}", ExitCode.USAGE)


def load_inputs(
    kg_path: Path,
    hypotheses_path: Path,
    kg_format: Optional[KGFormat],
    symmetrize: Optional[str],
) -> tuple[KnowledgeGraph, List[HypothesisSet]]:
    settings = current_settings()
    relations = split_list(symmetrize) if symmetrize is not None else settings.symmetrize
    try:
        kg = load_kg_file(kg_path, kg_format or settings.kg_format, symmetrize=relations)
        hypotheses = load_hypotheses_file(hypotheses_path)
    except InterpretationError as e:
        fail(str(e), e.exit_code)
    return kg, hypotheses


def pick(value: Any, default: Any) -> Any:
    return default if value is None else value

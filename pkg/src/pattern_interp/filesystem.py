"""
输出文件写入
使用 anyio.Path 异步写文件，失败以 Failure 返回
"""

from __future__ import annotations

from pathlib import Path
from typing import Dict

import anyio
from anyio import Path as AsyncPath

from .core.models import RunResult
from .core.types import Failure, Result, Success
from .evaluation import EvalReport
from .synth import SyntheticSuite

SUITE_FILES = ("kg.tsv", "hypotheses.jsonl", "answers.jsonl")


def render_run(run: RunResult) -> str:
    """成功片段的输出按输入顺序拼接，每条记录以换行结尾"""
    return "".join(result.output + "\n" for result in run.segments if result.success and result.output)


async def write_text(path: Path, text: str) -> Result:
    try:
        target = AsyncPath(path)
        await target.parent.mkdir(parents=True, exist_ok=True)
        await target.write_text(text, encoding="utf-8")
        return Success(value=str(path), message=f"已写入 {path}")
    except OSError as e:
        return Failure(error=f"写入 {path} 失败: {e}")


async def write_run_output(path: Path, run: RunResult) -> Result:
    return await write_text(path, render_run(run))


async def write_suite(out_dir: Path, suite: SyntheticSuite) -> Result:
    """并发写出 kg.tsv / hypotheses.jsonl / answers.jsonl"""
    contents: Dict[str, str] = dict(zip(SUITE_FILES, (suite.kg_text(), suite.hypotheses_text(), suite.answers_text())))
    results: Dict[str, Result] = {}

    async def write_one(name: str) -> None:
        results[name] = await write_text(out_dir / name, contents[name])

    async with anyio.create_task_group() as tg:
        for name in SUITE_FILES:
            tg.start_soon(write_one, name)

    for name in SUITE_FILES:
        if isinstance(results[name], Failure):
            return results[name]
    return Success(value=[str(out_dir / name) for name in SUITE_FILES], message=f"套件已写入 {out_dir}")


async def write_report(path: Path, report: EvalReport) -> Result:
    return await write_text(path, report.to_tsv())

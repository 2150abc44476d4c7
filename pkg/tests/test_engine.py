import json
import time

import anyio

from helpers import pour_hypothesis
from pattern_interp.core.models import InferenceParams
from pattern_interp.core.types import ExitCode, OutputFormat
from pattern_interp.engine import InterpretationEngine, interpret_segments, map_in_threads
from pattern_interp.filesystem import render_run


def test_map_in_threads_keeps_input_order():
    def slow_square(index, value):
        time.sleep(0.01 * (5 - index))
        return value * value

    results = anyio.run(map_in_threads, slow_square, [1, 2, 3, 4, 5], 4)
    assert results == [1, 4, 9, 16, 25]


def test_map_in_threads_keeps_none_results():
    results = anyio.run(map_in_threads, lambda index, value: None if value % 2 else value, [1, 2, 3], 2)
    assert results == [None, 2, None]


def _run(engine, hypotheses, **kwargs):
    async def main():
        return await engine.run(hypotheses, **kwargs)

    return anyio.run(main)


def test_output_independent_of_worker_count(kitchen_kg, kitchen_segments, fast_params):
    serial = _run(InterpretationEngine(kitchen_kg, fast_params, workers=1), kitchen_segments)
    parallel = _run(InterpretationEngine(kitchen_kg, fast_params, workers=4), kitchen_segments)
    again = _run(InterpretationEngine(kitchen_kg, fast_params, workers=4), kitchen_segments)
    assert serial.success
    assert render_run(serial) == render_run(parallel) == render_run(again)
    assert [r.segment for r in parallel.segments] == ["seg_a", "seg_b", "seg_c"]
    assert serial.stats["succeeded"] == 3


def test_json_lines_parse(kitchen_kg, kitchen_segments, fast_params):
    run = _run(InterpretationEngine(kitchen_kg, fast_params), kitchen_segments)
    lines = render_run(run).splitlines()
    assert len(lines) == 3
    records = [json.loads(line) for line in lines]
    assert [r["segment"] for r in records] == ["seg_a", "seg_b", "seg_c"]
    for record in records:
        interpretations = record["interpretations"]
        energies = [i["energy"] for i in interpretations]
        assert energies == sorted(energies)
        assert interpretations[0]["rank"] == 1
        assert interpretations[0]["label"] is not None
        assert record["trace"]["iterations"] == fast_params.iterations


def test_caption_output_requires_subject(pour_kg):
    engine = InterpretationEngine(pour_kg, InferenceParams(iterations=20), output_format=OutputFormat.CAPTION)
    run = _run(engine, [pour_hypothesis()])
    assert not run.success
    [failure] = run.failures
    assert failure.error_type == "MissingRoleError"
    assert run.exit_code == ExitCode.RUNTIME
    assert render_run(run) == ""


def test_label_format_lines(pour_kg):
    params = InferenceParams(iterations=40, top_n=2, local_ratio=0.0)
    engine = InterpretationEngine(pour_kg, params, output_format=OutputFormat.LABEL)
    run = _run(engine, [pour_hypothesis("a"), pour_hypothesis("b")])
    lines = render_run(run).splitlines()
    assert [line.split("\t")[0] for line in lines] == ["a", "a", "b", "b"]
    assert all(line.endswith("\tpour oil") for line in lines)
    segment, rank, energy, _ = lines[0].split("\t")
    assert rank == "1"
    assert len(energy.split(".")[1]) == 6


def test_content_and_dot_formats(pour_kg, fig3b_params):
    params = fig3b_params.with_overrides(iterations=20, top_n=1)
    content = _run(InterpretationEngine(pour_kg, params, output_format=OutputFormat.CONTENT), [pour_hypothesis()])
    assert render_run(content).endswith("\tpour oil (liquid) (fuel) (black)\n")
    dot = _run(InterpretationEngine(pour_kg, params, output_format=OutputFormat.DOT), [pour_hypothesis()])
    assert "digraph pour_oil_1 {" in render_run(dot)


def test_oracle_mode(pour_kg, fig3b_params):
    engine = InterpretationEngine(pour_kg, fig3b_params, oracle_budget=100)
    run = _run(engine, [pour_hypothesis()], oracle=True)
    assert run.success
    [segment] = run.segments
    assert segment.document.trace is None
    assert len(segment.document.interpretations) == 8
    assert run.stats["mode"] == "oracle"


def test_oracle_over_budget_fails_segment(pour_kg, fig3b_params):
    engine = InterpretationEngine(pour_kg, fig3b_params, oracle_budget=3)
    run = _run(engine, [pour_hypothesis()], oracle=True)
    [failure] = run.failures
    assert failure.error_type == "SearchBudgetExceeded"
    assert failure.exit_code == ExitCode.RUNTIME


def test_interpret_segments_helper(pour_kg):
    async def main():
        return await interpret_segments(pour_kg, [pour_hypothesis()], InferenceParams(iterations=10), workers=2)

    run = anyio.run(main)
    assert run.success
    assert run.segments[0].best_energy is not None

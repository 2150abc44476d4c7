"""共享 fixtures"""

from __future__ import annotations

import pytest

from helpers import EGG_ROWS, KITCHEN_ROWS, POUR_ROWS, kitchen_hypotheses, make_kg, pour_hypothesis
from pattern_interp.core.models import InferenceParams
from pattern_interp.inference.proposals import initialize
from pattern_interp.utils.logging import configure_logging


@pytest.fixture(autouse=True)
def _logging():
    # 每个测试重新绑定到当前 stderr（CliRunner 会替换它）
    configure_logging(False, colors=False)
    yield


@pytest.fixture(scope="session")
def egg_kg():
    return make_kg(EGG_ROWS)


@pytest.fixture(scope="session")
def pour_kg():
    return make_kg(POUR_ROWS)


@pytest.fixture(scope="session")
def kitchen_kg():
    return make_kg(KITCHEN_ROWS)


@pytest.fixture
def fig3b_params():
    return InferenceParams(cues_per_pair=3, cue_candidates=5)


@pytest.fixture
def fig3b(pour_kg, fig3b_params):
    """pour oil (liquid) (fuel) (black)"""
    return initialize(pour_hypothesis(), pour_kg, fig3b_params)


@pytest.fixture
def kitchen_segments():
    return kitchen_hypotheses()


@pytest.fixture
def fast_params():
    return InferenceParams(iterations=150, rng_seed=7)

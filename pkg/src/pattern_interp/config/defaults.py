from __future__ import annotations

"""
Centralized default values for CLI, models, and settings.
Import these constants instead of repeating literals.
"""

# Knowledge graph defaults
KG_COMMENT_PREFIX: str = "#"

# Generator space defaults
GENERATOR_DEFAULT_MAX_SEMANTIC_BONDS: int = 10
GENERATOR_DEFAULT_WILDCARD_RELATED_TO: bool = False

# Hypothesis defaults
HYPOTHESIS_DEFAULT_K_MAX: int = 5

# Inference defaults
INFERENCE_DEFAULT_ITERATIONS: int = 2000
INFERENCE_DEFAULT_INITIAL_TEMPERATURE: float = 2.0
INFERENCE_DEFAULT_COOLING_RATIO: float = 0.995
INFERENCE_DEFAULT_K_COST: float = 1.0
INFERENCE_DEFAULT_M_SWAP: int = 4
INFERENCE_DEFAULT_CUES_PER_PAIR: int = 3
INFERENCE_DEFAULT_CUE_CANDIDATES: int = 5
INFERENCE_DEFAULT_TOP_N: int = 10
INFERENCE_DEFAULT_SEED: int = 0
INFERENCE_DEFAULT_LOCAL_RATIO: float = 0.8
INFERENCE_DEFAULT_CHAINS: int = 1
INFERENCE_DEFAULT_Q_COUNT_IN_BONDS: bool = False
INFERENCE_DEFAULT_CUE_STRICT: bool = False

# Oracle defaults
ORACLE_DEFAULT_BUDGET: int = 200_000

# Energy cache cross-check tolerance
ENERGY_CHECK_TOLERANCE: float = 1e-9

# Rendering defaults
CAPTION_DETERMINERS: tuple[str, ...] = ("A", "The")
CAPTION_PREPOSITIONS: tuple[str | None, ...] = ("on", "in", "with", "into", "to", None)
SCORER_UNKNOWN_FLOOR: float = 0.5

# Feature tags attached per slot role (HOF for actions, HOG for objects)
FEATURE_TAG_BY_ROLE: dict[str, str] = {
    "action": "HOF",
    "object": "HOG",
    "subject": "HOG",
    "other": "CNN-fc7",
}

# Runner defaults
RUNNER_DEFAULT_WORKERS: int = 1

# Synthetic suite defaults
SYNTH_DEFAULT_INSTANCES: int = 100
SYNTH_DEFAULT_SLOTS: int = 2
SYNTH_DEFAULT_K_CANDIDATES: int = 5
SYNTH_DEFAULT_KG_SIZE: int = 200
SYNTH_DEFAULT_CUE_DENSITY: float = 0.3
SYNTH_DEFAULT_MAX_RETRIES: int = 20
SYNTH_NOISE_CONCEPTS_MIN: int = 8
SYNTH_LABEL_NOISE_PROBABILITY: float = 0.5
SYNTH_REVERSE_ASSERTION_PROBABILITY: float = 0.5
SYNTH_RELATIONS: tuple[str, ...] = (
    "UsedFor",
    "CapableOf",
    "AtLocation",
    "HasA",
    "PartOf",
    "ReceivesAction",
    "Causes",
    "HasProperty",
)
# (low, high) 均匀分布区间；预置项与干扰项区间不相交
SYNTH_PLANTED_CONFIDENCE: tuple[float, float] = (0.35, 0.65)
SYNTH_DISTRACTOR_CONFIDENCE: tuple[float, float] = (0.7, 0.95)
SYNTH_PLANTED_WEIGHT: tuple[float, float] = (2.0, 3.0)
SYNTH_DISTRACTOR_WEIGHT: tuple[float, float] = (-1.5, -0.5)
SYNTH_NOISE_WEIGHT: tuple[float, float] = (-1.0, 1.0)

# Evaluation report columns (fixed order)
EVAL_REPORT_COLUMNS: tuple[str, ...] = (
    "segment",
    "anneal_energy",
    "oracle_energy",
    "energy_gap",
    "hit_optimum",
    "anneal_label",
    "planted_label",
    "label_match",
    "seconds",
)

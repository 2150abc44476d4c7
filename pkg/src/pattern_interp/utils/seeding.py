"""随机数派生规则

所有随机性都来自一个种子：第 i 个片段的第 chain 条链使用
default_rng(SeedSequence([seed, i, chain]))，因此每个片段可单独复现。
"""

from __future__ import annotations

import numpy as np


def derive_rng(seed: int, index: int = 0, chain: int = 0) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, index, chain]))


def derive_seed(seed: int, index: int) -> int:
    """派生一个 64 位整数子种子（合成实例使用）"""
    return int(np.random.SeedSequence([seed, index]).generate_state(1, dtype=np.uint64)[0])

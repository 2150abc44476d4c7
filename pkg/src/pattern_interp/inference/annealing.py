"""
模拟退火（MCMC）

从 initialize 开始，每步以 local_ratio 的概率做局部提议、否则做全局提议，
按 Metropolis 规则 min(1, exp(-ΔE/T)) 接受，T_{t+1} = α·T_t。
返回整条轨迹中能量最低的 top_n 个结构不同的配置。
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np

from .linking import SearchContext
from .proposals import _global, _local, initialize
from ..core.errors import InterpretationError
from ..core.models.energy import EnergyBreakdown
from ..core.models.hypothesis import HypothesisSet
from ..core.models.params import InferenceParams
from ..core.types import MoveKind
from ..knowledge.graph import KnowledgeGraph
from ..pattern.configuration import Configuration
from ..utils.logging import get_logger
from ..utils.seeding import derive_rng

logger = get_logger(__name__)


def metropolis_accept(delta: float, temperature: float, rng: np.random.Generator) -> bool:
    """ΔE <= 0 总是接受（不消耗随机数）；否则以 exp(-ΔE/T) 的概率接受"""
    if delta <= 0.0:
        return True
    if temperature <= 0.0:
        return False
    return bool(rng.random() < math.exp(-delta / temperature))


@dataclass(frozen=True, slots=True)
class MoveRecord:
    chain: int
    iteration: int
    kind: MoveKind
    delta: float
    accepted: bool
    temperature: float
    energy: float  # 本步之后当前状态的能量


@dataclass(frozen=True, slots=True)
class Interpretation:
    """排名后的解释"""
    rank: int
    configuration: Configuration
    energy: EnergyBreakdown
    key: Hashable

    @property
    def total(self) -> float:
        return self.energy.total


@dataclass
class SearchTrace:
    """逐步记录与全程最优配置"""
    records: List[MoveRecord] = field(default_factory=list)
    initial_energies: List[float] = field(default_factory=list)
    best: List[Interpretation] = field(default_factory=list)

    @property
    def iterations(self) -> int:
        return len(self.records)

    @property
    def accepted(self) -> int:
        return sum(1 for record in self.records if record.accepted)

    @property
    def acceptance_rate(self) -> float:
        return self.accepted / len(self.records) if self.records else 0.0

    def move_counts(self) -> Dict[MoveKind, int]:
        counts = {kind: 0 for kind in MoveKind}
        counts[MoveKind.INITIAL] = len(self.initial_energies)
        for record in self.records:
            counts[record.kind] += 1
        return counts

    def best_energy_curve(self, chain: int = 0) -> List[float]:
        """第 chain 条链逐步的历史最低能量（首项为初始能量）"""
        if chain >= len(self.initial_energies):
            return []
        curve = [self.initial_energies[chain]]
        for record in self.records:
            if record.chain == chain:
                curve.append(min(curve[-1], record.energy))
        return curve

    @property
    def best_energy(self) -> Optional[float]:
        return self.best[0].total if self.best else None


class TopNCollector:
    """按结构去重、保留能量最低的前 N 个配置"""

    def __init__(self, n: int):
        self.n = n
        self._entries: Dict[Hashable, Tuple[float, Configuration]] = {}

    def offer(self, c: Configuration) -> None:
        energy = c.total_energy
        key = c.structure_key()
        existing = self._entries.get(key)
        if existing is not None:
            if energy < existing[0]:
                self._entries[key] = (energy, c.copy())
            return
        if len(self._entries) >= self.n:
            worst_key = max(self._entries, key=lambda k: (self._entries[k][0], k))
            if (energy, key) >= (self._entries[worst_key][0], worst_key):
                return
            del self._entries[worst_key]
        self._entries[key] = (energy, c.copy())

    def merge(self, other: TopNCollector) -> None:
        for energy, c in other._entries.values():
            self.offer(c)

    def ranked(self) -> List[Interpretation]:
        """按重新计算的能量排序（并列按结构键）"""
        scored = []
        for key, (_, c) in self._entries.items():
            breakdown = c.recompute_energy()
            scored.append((breakdown.total, key, breakdown, c))
        scored.sort(key=lambda item: (item[0], item[1]))
        return [
            Interpretation(rank=i + 1, configuration=c, energy=breakdown, key=key)
            for i, (_, key, breakdown, c) in enumerate(scored)
        ]


@dataclass
class AnnealResult:
    trace: SearchTrace
    interpretations: List[Interpretation]

    @property
    def best(self) -> Optional[Interpretation]:
        return self.interpretations[0] if self.interpretations else None


def _run_chain(
    chain: int,
    ctx: SearchContext,
    rng: np.random.Generator,
    trace: SearchTrace,
    collector: TopNCollector,
) -> None:
    h, p = ctx.hypothesis, ctx.params
    assert h is not None
    current = initialize(h, ctx.kg, p, ctx)
    trace.initial_energies.append(current.total_energy)
    collector.offer(current)
    temperature = p.initial_temperature
    for iteration in range(p.iterations):
        if rng.random() < p.local_ratio:
            proposal = _local(current, h, ctx.kg, p.m_swap, rng, ctx)
        else:
            proposal = _global(current, rng, ctx)
        delta = proposal.configuration.total_energy - current.total_energy
        accepted = metropolis_accept(delta, temperature, rng)
        if proposal.configuration is not current:
            # 被拒绝的提议也参与 top_n 排名
            collector.offer(proposal.configuration)
        if accepted and proposal.configuration is not current:
            current = proposal.configuration
            if p.debug_checks:
                current.assert_consistent()
                violations = current.validate()
                if violations:
                    raise InterpretationError(f"第 {iteration} 步配置非法: {violations[0]}")
        trace.records.append(
            MoveRecord(chain, iteration, proposal.kind, delta, accepted, temperature, current.total_energy)
        )
        temperature *= p.cooling_ratio


def anneal(
    h: HypothesisSet,
    kg: KnowledgeGraph,
    p: InferenceParams,
    *,
    segment_index: int = 0,
    rngs: Optional[Sequence[np.random.Generator]] = None,
) -> AnnealResult:
    """运行 p.chains 条独立链并合并 top_n

    第 chain 条链的随机数由 (rng_seed, segment_index, chain) 派生；也可直接传入 rngs。
    """
    ctx = SearchContext(h, kg, p)
    trace = SearchTrace()
    collector = TopNCollector(p.top_n)
    chain_rngs = list(rngs) if rngs is not None else [derive_rng(p.rng_seed, segment_index, i) for i in range(p.chains)]
    for chain, rng in enumerate(chain_rngs):
        chain_collector = TopNCollector(p.top_n)
        _run_chain(chain, ctx, rng, trace, chain_collector)
        collector.merge(chain_collector)
    trace.best = collector.ranked()
    logger.debug(
        "anneal_finished",
        segment=h.segment,
        chains=len(chain_rngs),
        iterations=trace.iterations,
        acceptance_rate=round(trace.acceptance_rate, 4),
        best_energy=trace.best_energy,
    )
    return AnnealResult(trace=trace, interpretations=trace.best)

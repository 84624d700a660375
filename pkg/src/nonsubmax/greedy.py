"""The standard greedy algorithm under a cardinality constraint."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import ArgumentError
from .subsets import ZERO_TOL, SetFunction

# A tie-break policy maps the tied candidate indices (ascending) to the chosen one.
TieBreak = Callable[[Sequence[int]], int]


def lowest_index(candidates: Sequence[int]) -> int:
    return candidates[0]


def highest_index(candidates: Sequence[int]) -> int:
    return candidates[-1]


def priority_order(order: Sequence[int]) -> TieBreak:
    """Prefer candidates that appear earlier in ``order``."""
    rank = {e: r for r, e in enumerate(order)}

    def pick(candidates: Sequence[int]) -> int:
        return min(candidates, key=lambda e: (rank.get(e, len(rank)), e))

    return pick


@dataclass
class GreedyTrace:
    """Chain ``S^0 < S^1 < ... < S^K`` with the chosen elements and their gains."""

    chain: list[int] = field(default_factory=lambda: [0])
    chosen: list[int] = field(default_factory=list)
    gains: list[float] = field(default_factory=list)
    values: list[float] = field(default_factory=lambda: [0.0])

    @property
    def K(self) -> int:
        return len(self.chosen)

    @property
    def final_set(self) -> int:
        return self.chain[-1]

    @property
    def final_value(self) -> float:
        return self.values[-1]


def run_greedy(F: SetFunction, K: int, tie_break: TieBreak = lowest_index, tol: float = ZERO_TOL) -> GreedyTrace:
    """Pick ``K`` elements, each maximizing the marginal gain on the current set.

    Candidates whose gain lies within ``tol`` of the step maximum are tied and
    resolved by ``tie_break``.  All ``K`` steps run even when gains vanish.
    """
    n = F.n
    if not 1 <= K <= n:
        raise ArgumentError(f"budget K must be in [1, {n}], got {K}")
    trace = GreedyTrace()
    S = 0
    FS = F(0)
    for _ in range(K):
        gains = {}
        for e in range(n):
            if S >> e & 1:
                continue
            gains[e] = F(S | (1 << e)) - FS
        best = max(gains.values())
        tied = [e for e, g in gains.items() if g >= best - tol]
        j = tie_break(tied)
        S |= 1 << j
        FS = F(S)
        trace.chain.append(S)
        trace.chosen.append(j)
        trace.gains.append(gains[j])
        trace.values.append(FS)
    return trace

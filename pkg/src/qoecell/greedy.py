"""Level-by-level greedy candidacy allocation.

Levels are processed from the basic rate upward. Within a level the still
eligible users are tried in order of decreasing channel gain; each try asks
whether the user can reach the level's rate while everyone else keeps the
rate floor already granted. The first failure closes the level for all
remaining (weaker) users.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .channel import RadioBudget, UserChannel, capacity
from .frontier import RATE_RTOL, CandidateSolution, solve_candidate
from .ladder import BELOW_BASIC, IndicatorMatrix, RateLadder, achieved_level


@dataclass(frozen=True)
class FinalAllocation:
    bandwidth_hz: tuple[float, ...]
    power_w: tuple[float, ...]
    achieved_rate_bps: tuple[float, ...]
    final_level: tuple[int, ...]


@dataclass
class AllocationState:
    """Running targets ``r_m^u`` and candidacy top levels."""

    targets: list[float]
    top_levels: list[int]

    @classmethod
    def initial(cls, user_count: int) -> "AllocationState":
        return cls([0.0] * user_count, [BELOW_BASIC] * user_count)


@dataclass(frozen=True)
class AllocationResult:
    indicators: IndicatorMatrix
    allocation: FinalAllocation
    solves: int


def gain_order(gains: Sequence[float]) -> list[int]:
    """User indices by decreasing gain; ties go to the lower index."""
    return sorted(range(len(gains)), key=lambda u: (-gains[u], u))


def allocate(channels: Sequence[UserChannel], ladder: RateLadder,
             radio: RadioBudget) -> AllocationResult:
    """Run the greedy candidacy search and grant leftovers to the best user."""
    if not channels:
        raise ValueError("allocate needs at least one user")
    gains = [ch.combined_gain for ch in channels]
    order = gain_order(gains)
    state = AllocationState.initial(len(gains))
    solves = 0
    for n, rate in enumerate(ladder.rates_bps):
        active = [u for u in order if state.top_levels[u] == n - 1]
        if not active:
            break
        for u in active:
            sol = solve_candidate(u, state.targets, gains, radio)
            solves += 1
            if not (sol.feasible and sol.achieved_rate_bps >= rate * (1.0 - RATE_RTOL)):
                break
            state.targets[u] = rate
            state.top_levels[u] = n
    indicators = IndicatorMatrix.from_top_levels(state.top_levels, len(ladder))
    return AllocationResult(indicators, finalize_allocation(state, gains, ladder, radio), solves)


def finalize_allocation(state: AllocationState, gains: Sequence[float], ladder: RateLadder,
                        radio: RadioBudget) -> FinalAllocation:
    """One last solve with the strongest user free, so it absorbs all leftovers."""
    best = gain_order(gains)[0]
    sol: CandidateSolution = solve_candidate(best, state.targets, gains, radio)
    if not sol.feasible:
        raise RuntimeError("final rate floors are infeasible; candidacy state is inconsistent")
    rates = tuple(capacity(b, p, g, radio) for b, p, g in zip(sol.bandwidth_hz, sol.power_w, gains))
    levels = tuple(achieved_level(r, ladder, rtol=2 * RATE_RTOL) for r in rates)
    return FinalAllocation(sol.bandwidth_hz, sol.power_w, rates, levels)

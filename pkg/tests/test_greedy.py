import math

import numpy as np
import pytest

from conftest import DEFAULT_RADIO, random_gains
from qoecell.channel import PathLossModel, RadioBudget, UserChannel, capacity, make_channels
from qoecell.config import scaled_scenario
from qoecell.frontier import RATE_RTOL
from qoecell.greedy import AllocationState, allocate, finalize_allocation, gain_order
from qoecell.ladder import (BELOW_BASIC, IndicatorMatrix, RateLadder, generate_lambda,
                            objective_value)
from qoecell.oracle import enumerate_indicator_optimum, max_level_count

LADDER = RateLadder.from_mbps([0.5, 1, 1.5, 2, 2.5])
SQUARE = PathLossModel()


def _channels(gains):
    return [UserChannel(u + 1, 1.0, g, 1.0) for u, g in enumerate(gains)]


def test_single_user_below_basic():
    radio = RadioBudget(1e3, 1e-6, 1e-9)
    res = allocate(_channels([1e-3]), LADDER, radio)
    assert res.indicators.level_counts() == [0] * 5
    assert res.allocation.final_level == (BELOW_BASIC,)
    assert res.solves == 1


def test_two_identical_users_reach_top():
    gains = [1e-3, 1e-3]
    # Either user alone reaches far beyond r_N on half the budget.
    assert capacity(10e6, 5.0, 1e-3, DEFAULT_RADIO) > 2 * LADDER[-1]
    res = allocate(_channels(gains), LADDER, DEFAULT_RADIO)
    assert res.indicators.top_levels() == [4, 4]
    lam = generate_lambda(2, 4)
    best = enumerate_indicator_optimum(gains, LADDER, lam, DEFAULT_RADIO,
                                       max_levels=4)
    assert objective_value(res.indicators, lam) == best.best_objective


def test_anchored_five_user_scenario():
    rng = np.random.default_rng(30354055)
    channels = make_channels([30, 35, 40, 55, 60], rng.standard_exponential(5), SQUARE)
    gains = [c.combined_gain for c in channels]
    lam = generate_lambda(5, 4)
    res = allocate(channels, LADDER, DEFAULT_RADIO)
    best = enumerate_indicator_optimum(gains, LADDER, lam, DEFAULT_RADIO, max_users=5, max_levels=4)
    assert objective_value(res.indicators, lam) == best.best_objective
    assert tuple(res.indicators.top_levels()) == best.best_top_levels
    alloc = res.allocation
    assert math.fsum(alloc.bandwidth_hz) == pytest.approx(DEFAULT_RADIO.total_bandwidth_hz, rel=1e-9)
    assert math.fsum(alloc.power_w) == pytest.approx(DEFAULT_RADIO.total_power_w, rel=1e-9)


def test_finalize_with_no_floors_gives_all_to_best():
    gains = [2e-4, 9e-4, 1e-4]
    state = AllocationState.initial(3)
    alloc = finalize_allocation(state, gains, LADDER, DEFAULT_RADIO)
    assert alloc.bandwidth_hz == (0.0, DEFAULT_RADIO.total_bandwidth_hz, 0.0)
    assert alloc.power_w == (0.0, DEFAULT_RADIO.total_power_w, 0.0)


def test_gain_order_ties_by_index():
    assert gain_order([1.0, 3.0, 3.0, 2.0]) == [1, 2, 3, 0]


def test_random_allocation_invariants(rng):
    for _ in range(150):
        U = int(rng.integers(1, 7))
        gains = random_gains(rng, U)
        res = allocate(_channels(gains), LADDER, DEFAULT_RADIO)
        assert res.indicators.is_monotone()
        assert res.solves <= U * len(LADDER)
        alloc = res.allocation
        assert math.fsum(alloc.bandwidth_hz) <= DEFAULT_RADIO.total_bandwidth_hz * (1 + 1e-9)
        assert math.fsum(alloc.power_w) <= DEFAULT_RADIO.total_power_w * (1 + 1e-9)
        tops = res.indicators.top_levels()
        for u in range(U):
            assert alloc.achieved_rate_bps[u] >= LADDER.rate_at(tops[u]) * (1 - RATE_RTOL)
            for v in range(U):
                if gains[u] > gains[v]:
                    assert alloc.final_level[u] >= alloc.final_level[v]


def test_optimal_against_enumeration_small(rng):
    for _ in range(60):
        U = int(rng.integers(1, 4))
        N = int(rng.integers(0, 3))
        radio, ladder = scaled_scenario(U, N)
        gains = random_gains(rng, U)
        lam = generate_lambda(U, N)
        res = allocate(_channels(gains), ladder, radio)
        best = enumerate_indicator_optimum(gains, ladder, lam, radio)
        assert objective_value(res.indicators, lam) == best.best_objective


def test_level_counts_are_maximal(rng):
    """Given the greedy's lower levels, no assignment fits more users at a level."""
    radio, ladder = scaled_scenario(3, 2)
    for _ in range(40):
        gains = random_gains(rng, 3)
        res = allocate(_channels(gains), ladder, radio)
        tops = res.indicators.top_levels()
        counts = res.indicators.level_counts()
        for n in range(len(ladder)):
            assert counts[n] == max_level_count(gains, ladder, radio, tops, n)

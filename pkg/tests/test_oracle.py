import math

import numpy as np
import pytest

from conftest import DEFAULT_RADIO, random_gains
from qoecell.channel import RadioBudget, capacity
from qoecell.config import scaled_scenario
from qoecell.errors import DomainError
from qoecell.frontier import feasible_price_interval, solve_candidate
from qoecell.ladder import BELOW_BASIC, RateLadder, generate_lambda
from qoecell.oracle import (MAX_ENUM_LEVELS, MAX_ENUM_USERS, enumerate_indicator_optimum,
                            grid_max_rate)

LADDER = RateLadder.from_mbps([0.5, 1.0, 1.5])


def test_single_user_generous_budget():
    res = enumerate_indicator_optimum([1e-3], LADDER, generate_lambda(1, 2), DEFAULT_RADIO)
    assert res.best_top_levels == (2,)
    assert res.evaluated_count == 4


def test_single_user_starved_budget():
    radio = RadioBudget(1e3, 1e-6, 1e-9)
    res = enumerate_indicator_optimum([1e-3], LADDER, generate_lambda(1, 2), radio)
    assert res.best_top_levels == (BELOW_BASIC,)
    assert res.best_objective == 0


def test_size_guards():
    big = RateLadder.from_mbps([0.5, 1, 1.5, 2, 2.5])
    with pytest.raises(DomainError):
        enumerate_indicator_optimum([1e-4] * 2, big, generate_lambda(2, 4), DEFAULT_RADIO)
    with pytest.raises(DomainError):
        enumerate_indicator_optimum([1e-4] * (MAX_ENUM_USERS + 1), LADDER,
                                    generate_lambda(MAX_ENUM_USERS + 1, 2), DEFAULT_RADIO)
    assert MAX_ENUM_LEVELS == 3


def test_evaluated_count(rng):
    radio, ladder = scaled_scenario(3, 2)
    res = enumerate_indicator_optimum(random_gains(rng, 3), ladder, generate_lambda(3, 2), radio)
    assert res.evaluated_count == 4 ** 3


def test_grid_unconstrained_is_capacity():
    assert grid_max_rate(0, [0.0], [1e-4], DEFAULT_RADIO) == capacity(20e6, 10.0, 1e-4, DEFAULT_RADIO)


def test_grid_brackets_solver(rng):
    for _ in range(15):
        gains = random_gains(rng, 2)
        targets = [0.0, float(rng.uniform(0.5e6, 2.5e6))]
        sol = solve_candidate(0, targets, gains, DEFAULT_RADIO)
        grid = grid_max_rate(0, targets, gains, DEFAULT_RADIO, points_per_user=10_000)
        if not sol.feasible:
            assert math.isnan(grid)
            continue
        assert grid <= sol.achieved_rate_bps * (1 + 1e-9)
        assert grid == pytest.approx(sol.achieved_rate_bps, rel=1e-3)


def test_grid_two_constrained(rng):
    for _ in range(5):
        gains = random_gains(rng, 3)
        targets = [0.0, 0.5e6, 1e6]
        sol = solve_candidate(0, targets, gains, DEFAULT_RADIO)
        grid = grid_max_rate(0, targets, gains, DEFAULT_RADIO, points_per_user=1500)
        if sol.feasible:
            assert grid <= sol.achieved_rate_bps * (1 + 1e-9)
            assert grid == pytest.approx(sol.achieved_rate_bps, rel=1e-2)


def test_grid_refuses_three_constrained():
    with pytest.raises(DomainError):
        grid_max_rate(0, [0.0, 1.0, 1.0, 1.0], [1e-4] * 4, DEFAULT_RADIO)
    with pytest.raises(DomainError):
        grid_max_rate(0, [0.0, 1.0], [1e-4] * 2, DEFAULT_RADIO, points_per_user=10)


def test_feasibility_closed_under_lowering(rng):
    radio, ladder = scaled_scenario(3, 2)
    for _ in range(100):
        gains = random_gains(rng, 3)
        tops = rng.integers(-1, 3, 3)
        rates = [ladder.rate_at(int(t)) if t >= 0 else 0.0 for t in tops]
        if feasible_price_interval(rates, gains, radio) is None:
            continue
        for u in range(3):
            if tops[u] >= 0:
                lowered = list(rates)
                lowered[u] = ladder.rate_at(int(tops[u]) - 1) if tops[u] > 0 else 0.0
                assert feasible_price_interval(lowered, gains, radio) is not None

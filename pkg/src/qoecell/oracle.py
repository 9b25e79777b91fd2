"""Brute-force verifiers for the greedy allocator and the frontier solver."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .channel import LN2, RadioBudget, capacity
from .errors import DomainError
from .frontier import feasible_price_interval
from .ladder import BELOW_BASIC, IndicatorMatrix, RateLadder, objective_value

MAX_ENUM_USERS = 4
MAX_ENUM_LEVELS = 3


@dataclass(frozen=True)
class EnumerationResult:
    best_objective: int
    best_top_levels: tuple[int, ...]
    evaluated_count: int


def _level_key(top_levels: Sequence[int], level_count: int) -> tuple[int, ...]:
    return tuple(IndicatorMatrix.from_top_levels(top_levels, level_count).level_counts())


def enumerate_indicator_optimum(gains: Sequence[float], ladder: RateLadder,
                                weights: Sequence[int], radio: RadioBudget, *,
                                max_users: int = MAX_ENUM_USERS,
                                max_levels: int = MAX_ENUM_LEVELS) -> EnumerationResult:
    """Best objective over every per-user top level in {BELOW_BASIC, 0..N}.

    An assignment counts when its rate floors are jointly feasible. Sizes past
    the guards are refused; callers may raise the guards explicitly for a
    one-off larger check.
    """
    U, N = len(gains), ladder.top
    if U > max_users or N > max_levels:
        raise DomainError(f"enumeration refused for U={U}, N={N}: "
                          f"limits are U<={max_users}, N<={max_levels}")
    best_obj, best_levels, best_key = -1, None, None
    count = 0
    for levels in itertools.product(range(BELOW_BASIC, N + 1), repeat=U):
        count += 1
        targets = [ladder.rate_at(level) for level in levels]
        if feasible_price_interval(targets, gains, radio) is None:
            continue
        obj = objective_value(IndicatorMatrix.from_top_levels(levels, len(ladder)), weights)
        key = _level_key(levels, len(ladder))
        if obj > best_obj or (obj == best_obj and key > best_key):
            best_obj, best_levels, best_key = obj, levels, key
    return EnumerationResult(best_obj, tuple(best_levels), count)


def max_level_count(gains: Sequence[float], ladder: RateLadder, radio: RadioBudget,
                    prefix_levels: Sequence[int], level: int) -> int:
    """Most users at ``level`` among feasible assignments sharing the lower-level prefix.

    Users whose prefix top level is ``level - 1`` or higher may end at
    ``level - 1`` or ``level``; everyone else keeps their prefix level.
    """
    U = len(gains)
    if U > MAX_ENUM_USERS:
        raise DomainError(f"enumeration refused for U={U}")
    below = [min(t, level - 1) for t in prefix_levels]
    eligible = [u for u in range(U) if below[u] == level - 1]
    best = 0
    for choice in itertools.product((False, True), repeat=len(eligible)):
        levels = list(below)
        for u, up in zip(eligible, choice):
            if up:
                levels[u] = level
        if sum(choice) <= best:
            continue
        if feasible_price_interval([ladder.rate_at(t) for t in levels], gains, radio) is not None:
            best = sum(choice)
    return best


def grid_max_rate(free_user: int, targets: Sequence[float], gains: Sequence[float],
                  radio: RadioBudget, points_per_user: int = 10_000,
                  snr_range: tuple[float, float] = (1e-6, 1e6)) -> float:
    """Scan constrained users' SNRs on a log grid; best leftover rate for the free user.

    Returns ``nan`` when no grid point fits the budgets. At most two
    constrained users are supported.
    """
    constrained = [k for k, r in enumerate(targets) if r > 0 and k != free_user]
    if len(constrained) > 2:
        raise DomainError("grid scan supports at most two constrained users")
    if points_per_user < 100:
        raise DomainError("points_per_user must be at least 100")
    B, P = radio.total_bandwidth_hz, radio.total_power_w
    if not constrained:
        return capacity(B, P, gains[free_user], radio)
    snr = np.geomspace(snr_range[0], snr_range[1], points_per_user)
    sum_b = np.zeros(1)
    sum_p = np.zeros(1)
    for k in constrained:
        a = radio.snr_scale(gains[k])
        b = targets[k] * LN2 / np.log1p(snr)
        p = snr * b / a
        sum_b = np.add.outer(sum_b, b).ravel()
        sum_p = np.add.outer(sum_p, p).ravel()
    lb = B - sum_b
    lp = P - sum_p
    ok = (lb >= 0) & (lp >= 0)
    if not ok.any():
        return float("nan")
    lb, lp = lb[ok], lp[ok]
    a_f = radio.snr_scale(gains[free_user])
    with np.errstate(divide="ignore", invalid="ignore"):
        rate = np.where((lb > 0) & (lp > 0), lb * np.log1p(a_f * lp / lb) / LN2, 0.0)
    return float(rate.max())

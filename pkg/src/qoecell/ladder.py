"""Rate ladder, lexicographic level weights and the indicator objective."""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError

#: Level marker for a rate below the basic (lowest) ladder rate.
BELOW_BASIC = -1


@dataclass(frozen=True)
class RateLadder:
    """Playable video rates ``r_0 < r_1 < ... < r_N`` in bit/s."""

    rates_bps: tuple[float, ...]

    def __post_init__(self):
        rates = tuple(float(r) for r in self.rates_bps)
        if not rates:
            raise DomainError("rate ladder is empty")
        if rates[0] <= 0 or any(b <= a for a, b in zip(rates, rates[1:])):
            raise DomainError(f"ladder rates must be positive and strictly increasing: {rates}")
        object.__setattr__(self, "rates_bps", rates)

    @property
    def top(self) -> int:
        """Index ``N`` of the highest rate."""
        return len(self.rates_bps) - 1

    def __len__(self):
        return len(self.rates_bps)

    def __getitem__(self, n):
        return self.rates_bps[n]

    def rate_at(self, level: int) -> float:
        """Rate floor for ``level``; zero for BELOW_BASIC."""
        return 0.0 if level == BELOW_BASIC else self.rates_bps[level]

    @classmethod
    def from_mbps(cls, rates_mbps: Sequence[float]) -> "RateLadder":
        return cls(tuple(r * 1e6 for r in rates_mbps))


def generate_lambda(user_count: int, levels: int) -> list[int]:
    """Integer weights ``lambda_0..lambda_N`` meeting the lexicographic condition.

    ``levels`` is the top index ``N``. The last weight is 1 and each earlier one
    is ``2 U`` times the sum of those after it, e.g. ``(5, 4)`` gives
    ``[13310, 1210, 110, 10, 1]``.
    """
    if user_count < 1:
        raise DomainError("user_count must be at least 1")
    if levels < 0:
        raise DomainError("levels must be nonnegative")
    weights = [1]
    tail = 1
    for _ in range(levels):
        lam = 2 * user_count * tail
        weights.append(lam)
        tail += lam
    return weights[::-1]


def validate_lambda(weights: Sequence[float], user_count: int) -> bool:
    """True iff ``lambda_n > U * sum(lambda_{n+1..N})`` for every ``n < N``."""
    if not weights or any(w <= 0 for w in weights):
        return False
    tail = 0
    for lam in reversed(weights[1:]):
        tail += lam
    for n in range(len(weights) - 1):
        if not weights[n] > user_count * tail:
            return False
        tail -= weights[n + 1]
    return True


class IndicatorMatrix:
    """Binary candidacy table ``I[n][u]`` with rows = levels, columns = users."""

    def __init__(self, entries):
        arr = np.asarray(entries, dtype=np.int8)
        if arr.ndim != 2:
            raise DomainError("indicator matrix must be 2-D (levels x users)")
        if np.any((arr != 0) & (arr != 1)):
            raise DomainError("indicator entries must be 0 or 1")
        self.entries = arr

    @classmethod
    def from_top_levels(cls, top_levels: Sequence[int], level_count: int) -> "IndicatorMatrix":
        n = np.arange(level_count)[:, None]
        return cls((n <= np.asarray(top_levels, dtype=int)[None, :]).astype(np.int8))

    @property
    def shape(self):
        return self.entries.shape

    def is_monotone(self) -> bool:
        """``I[n][u] <= I[n-1][u]`` for all ``n >= 1``."""
        return bool(np.all(self.entries[1:] <= self.entries[:-1]))

    def top_levels(self) -> list[int]:
        if not self.is_monotone():
            raise DomainError("top levels are undefined for a non-monotone matrix")
        return [int(c) - 1 for c in self.entries.sum(axis=0)]

    def level_counts(self) -> list[int]:
        return [int(c) for c in self.entries.sum(axis=1)]

    def __eq__(self, other):
        return isinstance(other, IndicatorMatrix) and np.array_equal(self.entries, other.entries)

    def __repr__(self):
        return f"IndicatorMatrix({self.entries.tolist()})"


def objective_value(indicators: IndicatorMatrix, weights: Sequence[int]) -> int:
    """Weighted candidacy count ``sum_n lambda_n sum_u I[n][u]``."""
    if indicators.shape[0] != len(weights):
        raise DomainError(
            f"indicator rows ({indicators.shape[0]}) do not match weight count ({len(weights)})")
    return sum(lam * count for lam, count in zip(weights, indicators.level_counts()))


def achieved_level(rate_bps: float, ladder: RateLadder, rtol: float = 0.0) -> int:
    """Highest level whose rate is met, or BELOW_BASIC.

    ``rtol`` lets a rate within a relative tolerance below a ladder point count
    as reaching it.
    """
    if rate_bps < 0:
        raise DomainError(f"rate must be nonnegative, got {rate_bps!r}")
    return bisect_right(ladder.rates_bps, rate_bps * (1.0 + rtol)) - 1

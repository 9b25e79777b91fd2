"""Weighted-sum-rate baseline with proportional-fair weights.

``wsr_allocate`` maximises ``sum_u w_u b_u log2(1 + a_u p_u / b_u)`` under the
bandwidth and power budgets. Each user's term is homogeneous in ``(b, p)``, so
for a power price ``eta`` a user is worth ``V_u(eta)`` per hertz at its best SNR
``s_u = w_u a_u / (eta ln 2) - 1`` and the dual reduces to the convex scalar
function ``B max_u V_u(eta) + eta P``. Its minimiser is either a smooth point,
where one user takes the whole budget, or a kink between two users, who then
split the budget so that both totals are met exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .channel import LN2, RadioBudget, capacity

DEFAULT_EPSILON_BPS = 1e3
DEFAULT_SUBSLOTS = 40


@dataclass(frozen=True)
class WsrSolution:
    bandwidth_hz: tuple[float, ...]
    power_w: tuple[float, ...]
    rates_bps: tuple[float, ...]
    objective: float


def _single(u: int, weights, gains, radio) -> WsrSolution:
    U = len(gains)
    bw = [0.0] * U
    pw = [0.0] * U
    bw[u], pw[u] = radio.total_bandwidth_hz, radio.total_power_w
    return _solution(bw, pw, weights, gains, radio)


def _solution(bw, pw, weights, gains, radio) -> WsrSolution:
    rates = tuple(capacity(b, p, g, radio) for b, p, g in zip(bw, pw, gains))
    return WsrSolution(tuple(bw), tuple(pw), rates,
                       math.fsum(w * r for w, r in zip(weights, rates)))


def wsr_allocate(weights: Sequence[float], gains: Sequence[float],
                 radio: RadioBudget) -> WsrSolution:
    """Exact weighted-sum-rate allocation; at most two users are served."""
    if any(not w > 0 for w in weights):
        raise ValueError("weights must be positive")
    U = len(gains)
    B, P = radio.total_bandwidth_hz, radio.total_power_w
    scales = [radio.snr_scale(g) for g in gains]
    users = [u for u in range(U) if scales[u] > 0]
    if not users:
        return _solution([0.0] * U, [0.0] * U, weights, gains, radio)
    knee = {u: weights[u] * scales[u] / LN2 for u in users}

    def leader(eta) -> tuple[Optional[int], float]:
        best, best_v, best_s = None, 0.0, 0.0
        for u in users:
            s = knee[u] / eta - 1.0
            if s <= 0:
                continue
            v = weights[u] * math.log1p(s) / LN2 - eta * s / scales[u]
            if v > best_v:
                best, best_v, best_s = u, v, s
        return best, best_s

    def slope(eta) -> float:
        u, s = leader(eta)
        return P if u is None else P - B * s / scales[u]

    hi = max(knee.values())
    lo = hi
    for _ in range(200):
        lo *= 1e-3
        if slope(lo) < 0:
            break
    while hi > lo * (1.0 + 1e-13):
        mid = math.sqrt(lo * hi)
        if slope(mid) < 0:
            lo = mid
        else:
            hi = mid

    u_lo, _ = leader(lo)
    u_hi, _ = leader(hi)
    singles = [_single(u, weights, gains, radio) for u in users]
    best_single = max(singles, key=lambda sol: sol.objective)
    if u_lo is None or u_hi is None or u_lo == u_hi:
        return best_single

    eta = math.sqrt(lo * hi)
    rho_i = max(knee[u_lo] / eta - 1.0, 0.0) / scales[u_lo]
    rho_j = max(knee[u_hi] / eta - 1.0, 0.0) / scales[u_hi]
    if rho_i <= rho_j:
        return best_single
    b_i = min(max((P - B * rho_j) / (rho_i - rho_j), 0.0), B)
    p_i = min(rho_i * b_i, P)
    bw = [0.0] * U
    pw = [0.0] * U
    bw[u_lo], pw[u_lo] = b_i, p_i
    bw[u_hi], pw[u_hi] = B - b_i, P - p_i
    pair = _solution(bw, pw, weights, gains, radio)
    return pair if pair.objective >= best_single.objective else best_single


@dataclass
class PfState:
    """Sliding per-user history of sub-slot rates driving PF weights."""

    user_count: int
    window_chunks: int = 1
    subslots_per_chunk: int = DEFAULT_SUBSLOTS
    epsilon_bps: float = DEFAULT_EPSILON_BPS
    history: np.ndarray = field(init=False, repr=False)
    filled: int = field(init=False, default=0)
    cursor: int = field(init=False, default=0)

    def __post_init__(self):
        if self.window_chunks < 1 or self.subslots_per_chunk < 1:
            raise ValueError("window and sub-slot counts must be positive")
        if not self.epsilon_bps > 0:
            raise ValueError("epsilon must be positive")
        self.history = np.zeros((self.user_count, self.window_chunks * self.subslots_per_chunk))

    @property
    def window(self) -> int:
        return self.history.shape[1]

    def record(self, rates: Sequence[float]) -> None:
        self.history[:, self.cursor] = rates
        self.cursor = (self.cursor + 1) % self.window
        self.filled = min(self.filled + 1, self.window)

    def mean_rates(self) -> np.ndarray:
        if self.filled == 0:
            return np.zeros(self.user_count)
        return self.history[:, :self.filled].sum(axis=1) / self.filled


def pf_weights(state: PfState) -> list[float]:
    """``1 / max(mean windowed rate, epsilon)`` per user."""
    return (1.0 / np.maximum(state.mean_rates(), state.epsilon_bps)).tolist()


@dataclass(frozen=True)
class WsrChunkResult:
    rates_bps: tuple[float, ...]
    peak_bandwidth_load: float
    peak_power_load: float


def wsr_chunk(state: PfState, gains: Sequence[float], radio: RadioBudget) -> WsrChunkResult:
    """Re-solve WSR once per sub-slot, updating PF history; return mean rates."""
    total = np.zeros(state.user_count)
    peak_b = peak_p = 0.0
    for _ in range(state.subslots_per_chunk):
        sol = wsr_allocate(pf_weights(state), gains, radio)
        state.record(sol.rates_bps)
        total += sol.rates_bps
        peak_b = max(peak_b, math.fsum(sol.bandwidth_hz) / radio.total_bandwidth_hz)
        peak_p = max(peak_p, math.fsum(sol.power_w) / radio.total_power_w)
    return WsrChunkResult(tuple((total / state.subslots_per_chunk).tolist()), peak_b, peak_p)

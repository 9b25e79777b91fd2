"""Minimum-resource operating points and the candidate subproblem.

A user that must carry rate ``r`` can trade bandwidth for power along the curve
``b(s) = r / log2(1 + s)``, ``p(s) = s b(s) / a`` where ``s`` is its SNR and
``a = gamma H / N_o``. Pricing power at ``mu`` bandwidth units per watt, the
cheapest point on that curve satisfies ``phi(s) = a / mu`` with
``phi(s) = (1 + s) ln(1 + s) - s``. The price therefore fixes every user's SNR,
and the aggregate bandwidth use rises with ``mu`` while the aggregate power use
falls, which turns each joint subproblem into one-dimensional root finding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from scipy.optimize import brentq

from .channel import LN2, RadioBudget, capacity
from .errors import DomainError

#: One-sided relative slack allowed on constrained users' rates.
RATE_RTOL = 1e-6
#: Relative slack allowed on the bandwidth and power budgets.
BUDGET_RTOL = 1e-9

_LOG_XTOL = 1e-13
_EXPAND_STEP = 3.0
_MAX_EXPANSIONS = 200


def _phi(s: float) -> float:
    if s < 1e-2:
        # Series sum_{n>=2} (-s)^n / (n (n - 1)); avoids cancellation.
        return s * s * (1 / 2 - s * (1 / 6 - s * (1 / 12 - s * (1 / 20 - s * (
            1 / 30 - s * (1 / 42 - s / 56))))))
    return (1.0 + s) * math.log1p(s) - s


def snr_at_price(ratio: float) -> float:
    """Solve ``phi(s) = ratio`` for ``s > 0`` (``ratio = a / mu``)."""
    if not ratio > 0:
        raise DomainError(f"price ratio must be positive, got {ratio!r}")
    if math.isinf(ratio):
        return math.inf
    s = math.sqrt(2.0 * ratio) if ratio < 0.5 else ratio / math.log1p(ratio)
    log_target = math.log(ratio)
    x = math.log(s)
    # Newton on log s; d log(phi) / d log(s) lies in [1, 2] so steps stay tame.
    for _ in range(60):
        ph = _phi(s)
        step = (math.log(ph) - log_target) * ph / (s * math.log1p(s))
        x -= step
        s = math.exp(x)
        if abs(step) < 1e-14:
            break
    return s


@dataclass(frozen=True)
class LinkCurvePoint:
    snr: float
    bandwidth_hz: float
    power_w: float
    cost: float


def curve_point(target_rate_bps: float, snr: float, scale: float) -> tuple[float, float]:
    """Bandwidth and power carrying ``target_rate_bps`` at SNR ``snr``."""
    b = target_rate_bps * LN2 / math.log1p(snr)
    return b, snr * b / scale


def min_cost_point(target_rate_bps: float, combined_gain: float, price_mu: float,
                   radio: RadioBudget) -> LinkCurvePoint:
    """Cheapest ``(b, p)`` delivering the target rate when cost is ``b + mu p``."""
    if target_rate_bps < 0:
        raise DomainError(f"target rate must be nonnegative, got {target_rate_bps!r}")
    if target_rate_bps == 0:
        return LinkCurvePoint(0.0, 0.0, 0.0, 0.0)
    if not combined_gain > 0:
        raise DomainError("a positive rate needs a positive channel gain")
    if not price_mu > 0:
        raise DomainError(f"price must be positive, got {price_mu!r}")
    scale = radio.snr_scale(combined_gain)
    s = snr_at_price(scale / price_mu)
    b, p = curve_point(target_rate_bps, s, scale)
    return LinkCurvePoint(s, b, p, b + price_mu * p)


@dataclass(frozen=True)
class PriceInterval:
    """Prices at which the constrained users fit in both budgets."""

    lo: float
    hi: float


@dataclass(frozen=True)
class CandidateSolution:
    feasible: bool
    bandwidth_hz: tuple[float, ...] = ()
    power_w: tuple[float, ...] = ()
    achieved_rate_bps: float = 0.0
    balancing_price: float = math.nan


class _Demand:
    """Aggregate consumption of a set of rate floors as a function of price."""

    def __init__(self, targets: Sequence[float], gains: Sequence[float], radio: RadioBudget,
                 exclude: Optional[int] = None):
        self.users = [k for k, r in enumerate(targets) if r > 0 and k != exclude]
        self.rates = [float(targets[k]) for k in self.users]
        self.scales = [radio.snr_scale(gains[k]) for k in self.users]
        if any(not a > 0 for a in self.scales):
            raise DomainError("a user with a positive rate floor has zero gain")
        # Power needed as bandwidth grows without bound.
        self.power_floor = sum(r * LN2 / a for r, a in zip(self.rates, self.scales))

    def __bool__(self):
        return bool(self.users)

    def points(self, mu: float) -> list[tuple[float, float]]:
        return [curve_point(r, snr_at_price(a / mu), a) for r, a in zip(self.rates, self.scales)]

    def totals(self, mu: float) -> tuple[float, float]:
        sb = sp = 0.0
        for r, a in zip(self.rates, self.scales):
            s = snr_at_price(a / mu)
            b = r * LN2 / math.log1p(s)
            sb += b
            sp += s * b / a
        return sb, sp


def _root_in_log(f, x0: float) -> float:
    """Root of an increasing function of ``x = log(mu)``, bracketed outward from x0."""
    lo = hi = x0
    flo = fhi = f(x0)
    if flo == 0:
        return x0
    for _ in range(_MAX_EXPANSIONS):
        if flo < 0 < fhi:
            break
        if flo >= 0:
            hi, fhi = lo, flo
            lo -= _EXPAND_STEP
            flo = f(lo)
        else:
            lo, flo = hi, fhi
            hi += _EXPAND_STEP
            fhi = f(hi)
    else:
        raise RuntimeError("could not bracket price root")
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    return brentq(f, lo, hi, xtol=_LOG_XTOL, rtol=1e-15)


def _natural_price(radio: RadioBudget) -> float:
    return math.log(radio.total_bandwidth_hz / radio.total_power_w)


def _load_crossing(demand: _Demand, radio: RadioBudget) -> tuple[float, float]:
    """Price where bandwidth and power loads are equal, and that common load.

    The load is the smallest factor by which both budgets must be scaled for
    the floors to fit.
    """
    B, P = radio.total_bandwidth_hz, radio.total_power_w

    def gap(x):
        sb, sp = demand.totals(math.exp(x))
        return math.log(sb / B) - math.log(sp / P)

    x = _root_in_log(gap, _natural_price(radio))
    mu = math.exp(x)
    sb, sp = demand.totals(mu)
    return mu, max(sb / B, sp / P)


def feasible_price_interval(targets: Sequence[float], gains: Sequence[float],
                            radio: RadioBudget) -> Optional[PriceInterval]:
    """Price range where the rate floors fit within both budgets, or None.

    The lower end is the cheapest power price keeping total power within
    ``P_max``; the upper end is the dearest price keeping total bandwidth
    within ``B``. With no positive floor every price works.
    """
    demand = _Demand(targets, gains, radio)
    if not demand:
        return PriceInterval(0.0, math.inf)
    B, P = radio.total_bandwidth_hz, radio.total_power_w
    x0 = _natural_price(radio)
    if demand.power_floor < P:
        x_lo = _root_in_log(lambda x: math.log(P) - math.log(demand.totals(math.exp(x))[1]), x0)
        x_hi = _root_in_log(lambda x: math.log(demand.totals(math.exp(x))[0]) - math.log(B), x0)
        if x_lo <= x_hi:
            return PriceInterval(math.exp(x_lo), math.exp(x_hi))
    mu, load = _load_crossing(demand, radio)
    if load <= 1.0 + RATE_RTOL:
        return PriceInterval(mu, mu)
    return None


def leftover_rate(free_user: int, targets: Sequence[float], gains: Sequence[float],
                  radio: RadioBudget, price_mu: float) -> float:
    """Free user's rate on the budget left after floors are met at ``price_mu``.

    Negative leftovers yield zero.
    """
    demand = _Demand(targets, gains, radio, exclude=free_user)
    sb, sp = demand.totals(price_mu) if demand else (0.0, 0.0)
    lb = radio.total_bandwidth_hz - sb
    lp = radio.total_power_w - sp
    if lb <= 0 or lp <= 0:
        return 0.0
    return capacity(lb, lp, gains[free_user], radio)


def solve_candidate(free_user: int, targets: Sequence[float], gains: Sequence[float],
                    radio: RadioBudget) -> CandidateSolution:
    """Maximise ``free_user``'s rate while every other user keeps its floor.

    At the optimum all users see one power price. The constrained users sit at
    their cheapest points for that price and the free user, holding the
    leftovers, has the same marginal rate of substitution. The price is found
    as the root of ``a_f (P - sum p) - s_f (B - sum b)``, which increases
    through zero exactly once; leftovers that are negative at the root mean
    the floors cannot all be met.
    """
    U = len(gains)
    B, P = radio.total_bandwidth_hz, radio.total_power_w
    demand = _Demand(targets, gains, radio, exclude=free_user)
    a_f = radio.snr_scale(gains[free_user])

    def package(points, mu, lb, lp):
        bw = [0.0] * U
        pw = [0.0] * U
        for k, (b, p) in zip(demand.users, points):
            bw[k], pw[k] = b, p
        bw[free_user], pw[free_user] = lb, lp
        rate = capacity(lb, lp, gains[free_user], radio) if lb > 0 and lp > 0 else 0.0
        return CandidateSolution(True, tuple(bw), tuple(pw), rate, mu)

    if not demand:
        mu = a_f / _phi(a_f * P / B) if a_f > 0 else math.nan
        return package([], mu, B, P)
    if demand.power_floor >= P * (1.0 + RATE_RTOL):
        return CandidateSolution(False)

    if a_f > 0 and demand.power_floor < P:
        def balance(x):
            mu = math.exp(x)
            sb, sp = demand.totals(mu)
            return a_f * (P - sp) / B - snr_at_price(a_f / mu) * (B - sb) / B

        x0 = math.log(a_f / _phi(a_f * P / B))
        mu = math.exp(_root_in_log(balance, x0))
        points = demand.points(mu)
        lb = B - math.fsum(b for b, _ in points)
        lp = P - math.fsum(p for _, p in points)
        if lb >= -BUDGET_RTOL * B and lp >= -BUDGET_RTOL * P:
            return package(points, mu, max(lb, 0.0), max(lp, 0.0))

    interval = feasible_price_interval([0.0 if k == free_user else t
                                        for k, t in enumerate(targets)], gains, radio)
    if interval is None:
        return CandidateSolution(False)
    mu = math.sqrt(interval.lo * interval.hi)
    points = demand.points(mu)
    sb = math.fsum(b for b, _ in points)
    sp = math.fsum(p for _, p in points)
    shrink = max(sb / B, sp / P, 1.0)
    # Scaling (b, p) together scales rate by the same factor.
    points = [(b / shrink, p / shrink) for b, p in points]
    lb = max(B - sb / shrink, 0.0)
    lp = max(P - sp / shrink, 0.0)
    return package(points, mu, lb, lp)

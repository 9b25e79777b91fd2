"""Link budget and fading for the downlink of a single small cell.

All rates are in bit/s (base-2 logarithm). A user's link is summarised by its
combined power gain ``H = path_gain * |h|^2`` and the radio budget shared by
all users.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError

LN2 = math.log(2.0)


@dataclass(frozen=True)
class RadioBudget:
    total_bandwidth_hz: float
    total_power_w: float
    noise_psd_w_per_hz: float
    gap: float = 1.0

    def __post_init__(self):
        for name in ("total_bandwidth_hz", "total_power_w", "noise_psd_w_per_hz"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive, got {getattr(self, name)!r}")
        if not 0 < self.gap <= 1:
            raise DomainError(f"gap must lie in (0, 1], got {self.gap!r}")

    def snr_scale(self, combined_gain: float) -> float:
        """SNR per watt-per-hertz: ``gamma * H / N_o``."""
        return self.gap * combined_gain / self.noise_psd_w_per_hz


@dataclass(frozen=True)
class PathLossModel:
    exponent: float = 2.0
    gain_constant: float = 1.0

    def __post_init__(self):
        if not self.exponent > 0:
            raise DomainError(f"path loss exponent must be positive, got {self.exponent!r}")
        if not self.gain_constant > 0:
            raise DomainError(f"gain constant must be positive, got {self.gain_constant!r}")


@dataclass(frozen=True)
class UserChannel:
    user_id: int
    distance_m: float
    path_gain: float
    small_scale_power: float

    @property
    def combined_gain(self) -> float:
        return self.path_gain * self.small_scale_power


def path_gain(distance_m: float, model: PathLossModel) -> float:
    """Large-scale power gain ``c / d**m``."""
    if not distance_m > 0:
        raise DomainError(f"distance must be positive, got {distance_m!r}")
    return model.gain_constant / distance_m ** model.exponent


def draw_small_scale(rng: np.random.Generator, size=None):
    """Rayleigh power gain ``|h|^2`` for ``h ~ CN(0, 1)``: unit-mean exponential."""
    return rng.standard_exponential(size)


def capacity(bandwidth_hz: float, power_w: float, combined_gain: float,
             radio: RadioBudget) -> float:
    """Shannon rate ``b log2(1 + gamma p H / (N_o b))`` in bit/s.

    Zero bandwidth or zero power gives zero rate (the continuity limit).
    """
    if bandwidth_hz < 0 or power_w < 0 or combined_gain < 0:
        raise DomainError("bandwidth, power and gain must be nonnegative")
    if bandwidth_hz == 0 or power_w == 0:
        return 0.0
    snr = radio.snr_scale(combined_gain) * power_w / bandwidth_hz
    return bandwidth_hz * math.log1p(snr) / LN2


def make_channels(distances_m: Sequence[float], fading: Sequence[float],
                  model: PathLossModel) -> list[UserChannel]:
    """Build one ``UserChannel`` per user from distances and ``|h|^2`` draws."""
    if len(distances_m) != len(fading):
        raise DomainError("distances and fading draws differ in length")
    return [
        UserChannel(user_id=i + 1, distance_m=float(d), path_gain=path_gain(float(d), model),
                    small_scale_power=float(f))
        for i, (d, f) in enumerate(zip(distances_m, fading))
    ]

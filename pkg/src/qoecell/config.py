"""Scenario configuration: JSON loading, validation and defaults."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from .channel import PathLossModel, RadioBudget
from .errors import ConfigError, DomainError
from .ladder import RateLadder, generate_lambda, validate_lambda

DEFAULT_LADDER_MBPS = (0.5, 1.0, 1.5, 2.0, 2.5)
DEFAULT_BANDWIDTH_HZ = 20e6
DEFAULT_POWER_W = 10.0
DEFAULT_NOISE_PSD = 1e-9
DEFAULT_DISTANCE_RANGE_M = (5.0, 80.0)
DEFAULT_USERS = 5


@dataclass(frozen=True)
class Algorithms:
    proposed: bool = True
    wsr: tuple[int, ...] = (1, 5)

    def labels(self) -> list[str]:
        return (["proposed"] if self.proposed else []) + [f"wsr_T{t}" for t in self.wsr]


@dataclass(frozen=True)
class ScenarioConfig:
    user_count: int
    distances_m: tuple[float, ...] | None = None
    distance_range_m: tuple[float, float] | None = None
    path_loss: PathLossModel = PathLossModel()
    radio: RadioBudget = RadioBudget(DEFAULT_BANDWIDTH_HZ, DEFAULT_POWER_W, DEFAULT_NOISE_PSD)
    ladder: RateLadder = RateLadder.from_mbps(DEFAULT_LADDER_MBPS)
    lambda_weights: tuple[int, ...] = field(default=())
    chunk_count: int = 60
    chunk_duration_s: float = 1.0
    repetitions: int = 100
    algorithms: Algorithms = Algorithms()
    subslots_per_chunk: int = 40
    master_seed: int = 0

    def __post_init__(self):
        if self.user_count < 1:
            raise ConfigError("user_count must be at least 1")
        if (self.distances_m is None) == (self.distance_range_m is None):
            raise ConfigError("give distances_m either as a list or as a {min, max} range")
        if self.distances_m is not None:
            if len(self.distances_m) != self.user_count:
                raise ConfigError("distances_m length must equal user_count")
            if any(not d > 0 for d in self.distances_m):
                raise ConfigError("distances must be positive")
        else:
            lo, hi = self.distance_range_m
            if not 0 < lo <= hi:
                raise ConfigError("distance range needs 0 < min <= max")
        if self.chunk_count < 0 or self.repetitions < 1 or self.subslots_per_chunk < 1:
            raise ConfigError("chunk_count >= 0, repetitions >= 1, subslots_per_chunk >= 1 required")
        if not self.chunk_duration_s > 0:
            raise ConfigError("chunk_duration_s must be positive")
        if any(t < 1 for t in self.algorithms.wsr):
            raise ConfigError("WSR windows must be positive")
        if not self.algorithms.labels():
            raise ConfigError("no algorithm selected")
        if not self.lambda_weights:
            object.__setattr__(self, "lambda_weights",
                               tuple(generate_lambda(self.user_count, self.ladder.top)))
        elif len(self.lambda_weights) != len(self.ladder):
            raise ConfigError("lambda needs one weight per ladder rate")
        elif not validate_lambda(self.lambda_weights, self.user_count):
            raise ConfigError(f"lambda {list(self.lambda_weights)} violates the dominance condition")

    @classmethod
    def from_dict(cls, raw: dict[str, Any]) -> "ScenarioConfig":
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(raw) - _TOP_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if "user_count" not in raw or "distances_m" not in raw:
            raise ConfigError("config needs user_count and distances_m")
        try:
            kwargs: dict[str, Any] = {"user_count": int(raw["user_count"])}
            dist = raw["distances_m"]
            if isinstance(dist, dict):
                _check_keys(dist, {"min", "max"}, "distances_m", required=True)
                kwargs["distance_range_m"] = (float(dist["min"]), float(dist["max"]))
            else:
                kwargs["distances_m"] = tuple(float(d) for d in dist)
            if "path_loss" in raw:
                _check_keys(raw["path_loss"], {"exponent", "gain_constant"}, "path_loss")
                kwargs["path_loss"] = PathLossModel(**raw["path_loss"])
            if "radio" in raw:
                _check_keys(raw["radio"], {"total_bandwidth_hz", "total_power_w",
                                           "noise_psd_w_per_hz", "gap"}, "radio")
                kwargs["radio"] = RadioBudget(**{
                    "total_bandwidth_hz": DEFAULT_BANDWIDTH_HZ, "total_power_w": DEFAULT_POWER_W,
                    "noise_psd_w_per_hz": DEFAULT_NOISE_PSD, **raw["radio"]})
            if "ladder" in raw:
                _check_keys(raw["ladder"], {"rates_bps"}, "ladder", required=True)
                kwargs["ladder"] = RateLadder(tuple(raw["ladder"]["rates_bps"]))
            lam = raw.get("lambda", "auto")
            if lam != "auto":
                if not isinstance(lam, list) or not all(isinstance(x, int) for x in lam):
                    raise ConfigError('lambda must be "auto" or a list of integers')
                kwargs["lambda_weights"] = tuple(lam)
            if "algorithms" in raw:
                algos = raw["algorithms"]
                _check_keys(algos, {"proposed", "wsr"}, "algorithms")
                kwargs["algorithms"] = Algorithms(bool(algos.get("proposed", False)),
                                                  tuple(int(t) for t in algos.get("wsr", ())))
            for key, conv in (("chunk_count", int), ("chunk_duration_s", float),
                              ("repetitions", int), ("subslots_per_chunk", int),
                              ("master_seed", int)):
                if key in raw:
                    kwargs[key] = conv(raw[key])
        except (TypeError, ValueError, KeyError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(str(exc)) from exc
        return cls(**kwargs)

    def to_dict(self) -> dict[str, Any]:
        return {
            "user_count": self.user_count,
            "distances_m": (list(self.distances_m) if self.distances_m is not None else
                            {"min": self.distance_range_m[0], "max": self.distance_range_m[1]}),
            "path_loss": {"exponent": self.path_loss.exponent,
                          "gain_constant": self.path_loss.gain_constant},
            "radio": {"total_bandwidth_hz": self.radio.total_bandwidth_hz,
                      "total_power_w": self.radio.total_power_w,
                      "noise_psd_w_per_hz": self.radio.noise_psd_w_per_hz,
                      "gap": self.radio.gap},
            "ladder": {"rates_bps": list(self.ladder.rates_bps)},
            "lambda": list(self.lambda_weights),
            "chunk_count": self.chunk_count,
            "chunk_duration_s": self.chunk_duration_s,
            "repetitions": self.repetitions,
            "algorithms": {"proposed": self.algorithms.proposed,
                           "wsr": list(self.algorithms.wsr)},
            "subslots_per_chunk": self.subslots_per_chunk,
            "master_seed": self.master_seed,
        }

    def replace(self, **changes) -> "ScenarioConfig":
        data = {f: getattr(self, f) for f in self.__dataclass_fields__}
        if "distances_m" in changes:
            data["distance_range_m"] = None
        if "distance_range_m" in changes:
            data["distances_m"] = None
        data.update(changes)
        if "user_count" in changes and "lambda_weights" not in changes:
            data["lambda_weights"] = ()
        return ScenarioConfig(**data)


_TOP_KEYS = {"user_count", "distances_m", "path_loss", "radio", "ladder", "lambda",
             "chunk_count", "chunk_duration_s", "repetitions", "algorithms",
             "subslots_per_chunk", "master_seed"}


def _check_keys(obj: Any, allowed: set[str], where: str, required: bool = False) -> None:
    if not isinstance(obj, dict):
        raise ConfigError(f"{where} must be an object")
    unknown = set(obj) - allowed
    if unknown:
        raise ConfigError(f"unknown keys in {where}: {sorted(unknown)}")
    if required and set(obj) != allowed:
        raise ConfigError(f"{where} needs keys {sorted(allowed)}")


def load_config(path: str | Path) -> ScenarioConfig:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from exc
    try:
        return ScenarioConfig.from_dict(raw)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc


def default_config(**changes) -> ScenarioConfig:
    """Five users uniformly placed in 5-80 m, 60 chunks, 100 repetitions."""
    base = ScenarioConfig(user_count=DEFAULT_USERS, distance_range_m=DEFAULT_DISTANCE_RANGE_M)
    return base.replace(**changes) if changes else base


def scaled_scenario(users: int, levels: int) -> tuple[RadioBudget, RateLadder]:
    """Budgets scaled to ``users`` and a 0.5 Mbps-step ladder with ``levels + 1`` rates."""
    share = users / DEFAULT_USERS
    radio = RadioBudget(DEFAULT_BANDWIDTH_HZ * share, DEFAULT_POWER_W * share, DEFAULT_NOISE_PSD)
    ladder = RateLadder.from_mbps([0.5 * (n + 1) for n in range(levels + 1)])
    return radio, ladder

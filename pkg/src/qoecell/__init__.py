"""QoE-aware joint bandwidth and power allocation for multi-user video in a small cell."""

from .channel import PathLossModel, RadioBudget, UserChannel, capacity, make_channels, path_gain
from .config import ScenarioConfig, load_config, default_config
from .errors import ConfigError, DomainError
from .frontier import feasible_price_interval, min_cost_point, solve_candidate
from .greedy import allocate
from .ladder import (BELOW_BASIC, IndicatorMatrix, RateLadder, achieved_level, generate_lambda,
                     objective_value, validate_lambda)
from .oracle import enumerate_indicator_optimum, grid_max_rate
from .simulation import run_campaign, run_trial
from .wsr import PfState, pf_weights, wsr_allocate, wsr_chunk

__version__ = "0.1.0"

"""Command-line entry point: simulate, allocate, verify, lambda-gen."""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .channel import PathLossModel, make_channels
from .config import DEFAULT_DISTANCE_RANGE_M, load_config, scaled_scenario
from .errors import ConfigError, DomainError
from .greedy import allocate
from .ladder import BELOW_BASIC, generate_lambda, objective_value, validate_lambda
from .oracle import enumerate_indicator_optimum
from .report import emit_report
from .simulation import run_campaign, trial_channels

EXIT_OK, EXIT_CONFIG, EXIT_MISMATCH = 0, 1, 2


def _cmd_simulate(args) -> int:
    config = load_config(args.config)
    if args.seed is not None:
        config = config.replace(master_seed=args.seed)
    report = run_campaign(config, parallel=args.parallel)
    paths = emit_report(report, args.out)
    print("algorithm,below_basic_percent,mean_rate_bps,mean_objective")
    for alg, stats in report.headline().items():
        print(f"{alg},{stats['below_basic_percent']:.6g},{stats['mean_rate_bps']:.6g},"
              f"{stats['mean_objective']:.6g}")
    for p in paths:
        print(f"wrote {p}", file=sys.stderr)
    return EXIT_OK


def _cmd_allocate(args) -> int:
    config = load_config(args.config)
    if config.chunk_count < 1:
        raise ConfigError("allocate needs chunk_count >= 1 to draw a channel")
    channels = trial_channels(config, 0)[0]
    res = allocate(channels, config.ladder, config.radio)
    alloc = res.allocation
    print("user,distance_m,combined_gain,bandwidth_hz,power_w,rate_bps,level")
    for ch, b, p, r, lv in zip(channels, alloc.bandwidth_hz, alloc.power_w,
                               alloc.achieved_rate_bps, alloc.final_level):
        level = "below_basic" if lv == BELOW_BASIC else lv
        print(f"{ch.user_id},{ch.distance_m:.6g},{ch.combined_gain:.6g},{b:.6g},{p:.6g},"
              f"{r:.6g},{level}")
    print(f"objective,{objective_value(res.indicators, config.lambda_weights)}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    radio, ladder = scaled_scenario(args.users, args.levels)
    weights = generate_lambda(args.users, args.levels)
    rng = np.random.default_rng(args.seed)
    model = PathLossModel()
    mismatches = 0
    for i in range(args.instances):
        channels = make_channels(rng.uniform(*DEFAULT_DISTANCE_RANGE_M, size=args.users),
                                 rng.standard_exponential(args.users), model)
        gains = [ch.combined_gain for ch in channels]
        greedy = objective_value(allocate(channels, ladder, radio).indicators, weights)
        best = enumerate_indicator_optimum(gains, ladder, weights, radio)
        if greedy != best.best_objective:
            mismatches += 1
            print(f"instance {i}: greedy {greedy} != optimum {best.best_objective} "
                  f"(levels {list(best.best_top_levels)})")
    print(f"{args.instances - mismatches}/{args.instances} instances match")
    return EXIT_MISMATCH if mismatches else EXIT_OK


def _cmd_lambda(args) -> int:
    weights = generate_lambda(args.users, args.levels)
    print(",".join(str(w) for w in weights))
    assert validate_lambda(weights, args.users)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qoecell", description="QoE-aware bandwidth/power allocation for a small cell")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a Monte Carlo campaign and write reports")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--parallel", type=int, default=1)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("allocate", help="allocate one fading draw and print the table")
    p.add_argument("--config", required=True)
    p.set_defaults(func=_cmd_allocate)

    p = sub.add_parser("verify", help="compare greedy against exhaustive enumeration")
    p.add_argument("--users", type=int, default=3)
    p.add_argument("--levels", type=int, default=2)
    p.add_argument("--instances", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("lambda-gen", help="print lexicographic level weights")
    p.add_argument("--users", type=int, required=True)
    p.add_argument("--levels", type=int, required=True)
    p.set_defaults(func=_cmd_lambda)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

"""Aggregation of chunk records and CSV/JSON emission."""

from __future__ import annotations

import csv
import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .config import ScenarioConfig
from .ladder import BELOW_BASIC

LEVEL_FILE = "level_percentages.csv"
RATE_FILE = "rate_cdf.csv"
OBJECTIVE_FILE = "objective_cdf.csv"
SUMMARY_FILE = "summary.json"


def sig6(x: float) -> float:
    """Round to the six significant digits written to disk."""
    return float(f"{x:.6g}")


def _level_label(level: int) -> str:
    return "below_basic" if level == BELOW_BASIC else str(level)


def _parse_level(label: str) -> int:
    return BELOW_BASIC if label == "below_basic" else int(label)


@dataclass
class MetricsReport:
    algorithms: list[str]
    levels: list[int]
    level_percent: dict[str, dict[int, float]] = field(default_factory=dict)
    rate_samples: dict[str, dict[int, list[float]]] = field(default_factory=dict)
    objective_samples: dict[str, list[int]] = field(default_factory=dict)
    config: dict = field(default_factory=dict)

    def below_basic_percent(self, algorithm: str) -> float:
        return self.level_percent[algorithm][BELOW_BASIC]

    def headline(self) -> dict:
        out = {}
        for alg in self.algorithms:
            if alg not in self.level_percent:
                continue
            per_user = self.rate_samples[alg]
            all_rates = [r for rates in per_user.values() for r in rates]
            objs = self.objective_samples[alg]
            out[alg] = {
                "rate_samples": len(all_rates),
                "below_basic_percent": self.level_percent[alg][BELOW_BASIC],
                "mean_rate_bps": sig6(sum(all_rates) / len(all_rates)),
                "mean_objective": sig6(sum(objs) / len(objs)),
            }
        return out


def aggregate(records: Iterable, config: ScenarioConfig) -> MetricsReport:
    """Pool chunk records into level percentages and sorted CDF samples."""
    algorithms = config.algorithms.labels()
    levels = [BELOW_BASIC] + list(range(len(config.ladder)))
    counts: dict[str, Counter] = defaultdict(Counter)
    rates: dict[str, dict[int, list[float]]] = defaultdict(lambda: defaultdict(list))
    objectives: dict[str, list[int]] = defaultdict(list)
    for rec in records:
        counts[rec.algorithm].update(rec.levels)
        for u, r in enumerate(rec.rates_bps):
            rates[rec.algorithm][u + 1].append(sig6(r))
        objectives[rec.algorithm].append(int(rec.objective))
    report = MetricsReport(algorithms, levels, config=config.to_dict())
    for alg in algorithms:
        total = sum(counts[alg].values())
        if not total:
            continue
        report.level_percent[alg] = {lv: sig6(100.0 * counts[alg][lv] / total) for lv in levels}
        report.rate_samples[alg] = {u: sorted(v) for u, v in sorted(rates[alg].items())}
        report.objective_samples[alg] = sorted(objectives[alg])
    return report


def _cdf(n: int) -> list[float]:
    return [sig6((i + 1) / n) for i in range(n)]


def emit_report(report: MetricsReport, output_dir: str | Path) -> list[Path]:
    """Write the three CSV tables and summary.json; returns the written paths."""
    out = Path(output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        paths = [out / LEVEL_FILE, out / RATE_FILE, out / OBJECTIVE_FILE, out / SUMMARY_FILE]
        with open(paths[0], "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["algorithm", "level", "percent"])
            for alg, row in report.level_percent.items():
                for lv in report.levels:
                    w.writerow([alg, _level_label(lv), f"{row[lv]:.6g}"])
        with open(paths[1], "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["algorithm", "user", "rate_bps", "cdf"])
            for alg, per_user in report.rate_samples.items():
                for user, samples in per_user.items():
                    for r, p in zip(samples, _cdf(len(samples))):
                        w.writerow([alg, user, f"{r:.6g}", f"{p:.6g}"])
        with open(paths[2], "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["algorithm", "objective", "cdf"])
            for alg, samples in report.objective_samples.items():
                for v, p in zip(samples, _cdf(len(samples))):
                    w.writerow([alg, v, f"{p:.6g}"])
        summary = {"config": report.config, "algorithms": report.algorithms,
                   "levels": [_level_label(lv) for lv in report.levels],
                   "headline": report.headline()}
        with open(paths[3], "w") as fh:
            json.dump(summary, fh, indent=2)
    except OSError as exc:
        raise OSError(f"failed writing report to {out}: {exc}") from exc
    return paths


def read_report(output_dir: str | Path) -> MetricsReport:
    """Rebuild a MetricsReport from files written by ``emit_report``."""
    out = Path(output_dir)
    with open(out / SUMMARY_FILE) as fh:
        summary = json.load(fh)
    report = MetricsReport(summary["algorithms"], [_parse_level(s) for s in summary["levels"]],
                           config=summary["config"])
    with open(out / LEVEL_FILE, newline="") as fh:
        for row in csv.DictReader(fh):
            report.level_percent.setdefault(row["algorithm"], {})[
                _parse_level(row["level"])] = float(row["percent"])
    with open(out / RATE_FILE, newline="") as fh:
        for row in csv.DictReader(fh):
            report.rate_samples.setdefault(row["algorithm"], {}).setdefault(
                int(row["user"]), []).append(float(row["rate_bps"]))
    with open(out / OBJECTIVE_FILE, newline="") as fh:
        for row in csv.DictReader(fh):
            report.objective_samples.setdefault(row["algorithm"], []).append(int(row["objective"]))
    return report

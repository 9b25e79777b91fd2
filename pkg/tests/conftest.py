import numpy as np
import pytest

from qoecell.channel import RadioBudget

DEFAULT_RADIO = RadioBudget(20e6, 10.0, 1e-9)


def random_gains(rng, n, lo=5.0, hi=80.0):
    """Path loss (exponent 2, unit constant) times Rayleigh power fading."""
    return list(rng.uniform(lo, hi, n) ** -2.0 * rng.standard_exponential(n))


@pytest.fixture
def radio():
    return DEFAULT_RADIO


@pytest.fixture
def rng():
    return np.random.default_rng(20171015)


ACCEPTANCE_LINES: list[str] = []


def report_criterion(number: int, title: str, passed: bool, detail: str) -> None:
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {title} ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)

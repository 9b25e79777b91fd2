import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qoecell.errors import DomainError
from qoecell.ladder import (BELOW_BASIC, IndicatorMatrix, RateLadder, achieved_level,
                            generate_lambda, objective_value, validate_lambda)

REFERENCE_LAMBDA = [13310, 1210, 110, 10, 1]
LADDER = RateLadder.from_mbps([0.5, 1, 1.5, 2, 2.5])


def test_generate_lambda_examples():
    assert generate_lambda(5, 4) == REFERENCE_LAMBDA
    assert generate_lambda(1, 0) == [1]
    assert generate_lambda(2, 1) == [4, 1]


@given(st.integers(1, 50), st.integers(0, 10))
def test_generated_lambda_always_valid(users, levels):
    lam = generate_lambda(users, levels)
    assert len(lam) == levels + 1
    assert validate_lambda(lam, users)


@pytest.mark.parametrize("weights, users, ok", [
    (REFERENCE_LAMBDA, 5, True),
    ([1, 1], 2, False),
    ([11, 1], 5, True),
    ([6, 1], 5, True),
    ([5, 1], 5, False),
    ([1], 3, True),
])
def test_validate_lambda(weights, users, ok):
    assert validate_lambda(weights, users) is ok


def test_objective_examples():
    zero = IndicatorMatrix(np.zeros((5, 5), dtype=int))
    assert objective_value(zero, REFERENCE_LAMBDA) == 0
    one_basic = IndicatorMatrix.from_top_levels([0, -1, -1, -1, -1], 5)
    assert objective_value(one_basic, REFERENCE_LAMBDA) == 13310
    four_top = IndicatorMatrix.from_top_levels([4, 4, 4, 4, -1], 5)
    assert objective_value(four_top, REFERENCE_LAMBDA) == 4 * 14641 == 58564
    assert 58564 < objective_value(IndicatorMatrix.from_top_levels([0] * 5, 5), REFERENCE_LAMBDA)
    assert objective_value(IndicatorMatrix([[1]]), [1]) == 1


def test_objective_dimension_mismatch():
    with pytest.raises(DomainError):
        objective_value(IndicatorMatrix.from_top_levels([1, 1], 3), REFERENCE_LAMBDA)


def test_indicator_monotonicity():
    assert IndicatorMatrix.from_top_levels([2, -1, 0], 3).is_monotone()
    bad = IndicatorMatrix([[0, 1], [1, 1]])
    assert not bad.is_monotone()
    with pytest.raises(DomainError):
        bad.top_levels()
    assert IndicatorMatrix.from_top_levels([2, -1, 0], 3).top_levels() == [2, -1, 0]


@settings(max_examples=200)
@given(st.data())
def test_lexicographic_dominance(data):
    users = data.draw(st.integers(1, 5))
    levels = data.draw(st.integers(0, 4))
    lvl = st.lists(st.integers(-1, levels), min_size=users, max_size=users)
    a = IndicatorMatrix.from_top_levels(data.draw(lvl), levels + 1)
    b = IndicatorMatrix.from_top_levels(data.draw(lvl), levels + 1)
    lam = generate_lambda(users, levels)
    if a.level_counts() > b.level_counts():
        assert objective_value(a, lam) > objective_value(b, lam)
    elif a.level_counts() == b.level_counts():
        assert objective_value(a, lam) == objective_value(b, lam)


@pytest.mark.parametrize("rate, level", [(0.7e6, 0), (0.4e6, BELOW_BASIC), (2.5e6, 4),
                                         (1.0e6, 1), (0.0, BELOW_BASIC), (9e6, 4)])
def test_achieved_level(rate, level):
    assert achieved_level(rate, LADDER) == level


def test_achieved_level_right_continuous_and_monotone():
    for n, r in enumerate(LADDER.rates_bps):
        assert achieved_level(r, LADDER) == n
        assert achieved_level(np.nextafter(r, 0), LADDER) == n - 1
    rates = np.linspace(0, 3e6, 3001)
    levels = [achieved_level(r, LADDER) for r in rates]
    assert all(x <= y for x, y in itertools.pairwise(levels))


def test_ladder_validation():
    with pytest.raises(DomainError):
        RateLadder((1.0, 1.0))
    with pytest.raises(DomainError):
        RateLadder(())
    assert LADDER.top == 4
    assert LADDER.rate_at(BELOW_BASIC) == 0.0

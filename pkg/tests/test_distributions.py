import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import enum_expected_max, enum_expected_min
from prophet_secretary.distributions import (
    DiscreteDistribution,
    below_prob,
    expected_max,
    expected_min,
    max_tail_integral,
    mean,
    partial_mean_above,
    tail_prob,
)
from prophet_secretary.instances import gen_075_hard, gen_min_exchange_hard, gen_min_iid_hard, gen_prophet_hard


@st.composite
def distributions(draw, max_atoms=4):
    k = draw(st.integers(1, max_atoms))
    values = draw(st.lists(st.integers(-5, 20), min_size=k, max_size=k, unique=True))
    weights = draw(st.lists(st.floats(0.05, 1.0), min_size=k, max_size=k))
    s = sum(weights)
    return DiscreteDistribution([(float(v), w / s) for v, w in zip(values, weights)])


def test_construction_sorts_and_merges():
    d = DiscreteDistribution([(3, 0.25), (0, 0.5), (3, 0.25)])
    assert d.values == (0.0, 3.0)
    assert d.probs == (0.5, 0.5)
    assert d == DiscreteDistribution([(0, 0.5), (3, 0.5)])


@pytest.mark.parametrize(
    "pairs",
    [[], [(0, 0.5), (1, 0.4)], [(math.nan, 1.0)], [(math.inf, 1.0)], [(0, 0.0), (1, 1.0)], [(0, -0.1), (1, 1.1)]],
)
def test_invalid_distributions_rejected(pairs):
    with pytest.raises(ValueError):
        DiscreteDistribution(pairs)


def test_tail_prob_examples():
    d = DiscreteDistribution([(0, 2 / 3), (3, 1 / 3)])
    assert tail_prob(d, 3) == pytest.approx(1 / 3, abs=1e-15)
    assert tail_prob(d, 4) == 0
    assert tail_prob(DiscreteDistribution.point_mass(1), 1) == 1
    assert below_prob(d, 3) == pytest.approx(2 / 3)


def test_mean_examples():
    assert mean(DiscreteDistribution.point_mass(1)) == 1
    assert mean(DiscreteDistribution([(0, 1 / 3), (1, 1 / 3), (8, 1 / 3)])) == pytest.approx(3, abs=1e-15)
    assert mean(DiscreteDistribution([(0, 0.5), (2, 0.5)])) == 1


def test_expected_max_examples():
    assert expected_max(gen_prophet_hard(0.5).distributions) == pytest.approx(1.5, abs=1e-12)
    assert expected_max(gen_075_hard(0.01).distributions) == pytest.approx(1.99, abs=1e-12)
    # nine equally likely outcomes of two copies of {0, 1, 4}; maxima sum to 23
    d = DiscreteDistribution([(0, 1 / 3), (1, 1 / 3), (4, 1 / 3)])
    assert expected_max([d, d]) == pytest.approx(23 / 9, abs=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
def test_expected_min_iid_hard_formula(n):
    expect = (1 / 3) ** n * 2**n + (2 / 3) ** n - (1 / 3) ** n
    assert expected_min(gen_min_iid_hard(n).distributions) == pytest.approx(expect, abs=1e-12)


def test_expected_min_examples():
    assert expected_min([DiscreteDistribution.point_mass(1)]) == 1
    assert expected_min(gen_min_exchange_hard(0.1).distributions) == pytest.approx(0.02, abs=1e-12)
    assert expected_min(gen_min_iid_hard(2).distributions) == pytest.approx(7 / 9, abs=1e-12)


def test_partial_mean_above():
    d = DiscreteDistribution([(0, 0.5), (2, 0.25), (6, 0.25)])
    assert partial_mean_above(d, 2) == pytest.approx(2.0)
    assert partial_mean_above(d, 2.5) == pytest.approx(1.5)


def test_ppf_maps_uniforms_to_atoms():
    d = DiscreteDistribution([(0, 0.25), (5, 0.75)])
    assert d.ppf(np.array([0.0, 0.2499, 0.25, 0.999999])).tolist() == [0, 0, 5, 5]


@given(distributions(), st.floats(-10, 25), st.floats(-10, 25))
def test_tail_prob_monotone(d, a, b):
    lo, hi = min(a, b), max(a, b)
    assert tail_prob(d, lo) >= tail_prob(d, hi)
    assert tail_prob(d, -math.inf) == pytest.approx(1.0, abs=1e-12)
    assert tail_prob(d, max(d.values) + 1) == 0


@settings(max_examples=150)
@given(st.lists(distributions(), min_size=1, max_size=4))
def test_extremes_match_enumeration(ds):
    assert expected_max(ds) == pytest.approx(enum_expected_max(ds), abs=1e-12)
    assert expected_min(ds) == pytest.approx(enum_expected_min(ds), abs=1e-12)
    assert expected_max(ds) >= max(mean(d) for d in ds) - 1e-12
    assert expected_min(ds) <= min(mean(d) for d in ds) + 1e-12


@given(st.lists(distributions(), min_size=1, max_size=3), st.floats(0, 25))
def test_max_tail_integral_against_riemann(ds, lower):
    ds = [DiscreteDistribution([(abs(v), p) for v, p in zip(d.values, d.probs)]) for d in ds]
    top = max(max(d.values) for d in ds)
    xs = np.linspace(lower, top + 1, 20001)
    dx = xs[1] - xs[0]
    mid = xs[:-1] + dx / 2
    surv = [1 - math.prod(1 - tail_prob(d, x) for d in ds) for x in mid]
    assert max_tail_integral(ds, lower) == pytest.approx(sum(surv) * dx, abs=5e-3)


def test_max_tail_integral_from_zero_is_opt():
    ds = gen_075_hard(0.1).distributions
    assert max_tail_integral(ds, 0.0) == pytest.approx(expected_max(ds), abs=1e-12)

import math

import numpy as np
import pytest

from conftest import random_instance, random_non_increasing
from oracles import enum_schedule_value
from prophet_secretary.distributions import DiscreteDistribution, expected_max, mean
from prophet_secretary.engine import Instance
from prophet_secretary.exact import (
    BudgetExceededError,
    evaluate_bruteforce,
    evaluate_exact,
    lemma_tail_gaps,
    single_threshold_candidates,
    sweep_single_threshold,
    theta_lower_bound,
)
from prophet_secretary.instances import gen_075_hard, gen_min_iid_hard, gen_one_threshold_hard
from prophet_secretary.schedules import (
    ThresholdSchedule,
    alpha_factors,
    secretary_schedule,
    theorem1_schedule,
    uniform_schedule,
)


def assert_reports_close(a, b, tol=1e-9):
    assert a.alg_value == pytest.approx(b.alg_value, abs=tol)
    assert a.opt_value == pytest.approx(b.opt_value, abs=tol)
    assert a.ratio == pytest.approx(b.ratio, abs=tol)
    np.testing.assert_allclose(a.passing.theta, b.passing.theta, atol=tol, rtol=0)
    np.testing.assert_allclose(a.passing.q_minus, b.passing.q_minus, atol=tol, rtol=0)
    np.testing.assert_allclose(a.per_step_value, b.per_step_value, atol=tol, rtol=0)


def test_one_threshold_hard_above_point_mass():
    inst = gen_one_threshold_hard(4)
    t = 1 / (1 - 1 / 4) * (1 + 1e-9)
    rep = evaluate_exact(inst, uniform_schedule(5, t))
    assert rep.alg_value == pytest.approx(1.0, abs=1e-12)
    assert rep.opt_value == pytest.approx(2.0, abs=1e-12)


def test_small_example_hand_value():
    # order (1,2) takes 1; order (2,1) takes 2 or falls back to 1: 0.5 + 0.75
    rep = evaluate_exact(gen_075_hard(0.5), uniform_schedule(2, 0.75))
    assert rep.alg_value == pytest.approx(1.25, abs=1e-12)
    assert rep.passing.theta.tolist() == pytest.approx([0.25, 0.0])


def test_zero_thresholds_take_first_arrival(rng):
    for _ in range(20):
        inst = random_instance(rng, int(rng.integers(1, 6)))
        rep = evaluate_exact(inst, uniform_schedule(inst.n, 0.0))
        assert rep.passing.theta[0] == pytest.approx(0.0, abs=1e-15)
        assert rep.alg_value == pytest.approx(np.mean([mean(d) for d in inst.distributions]), abs=1e-12)


def test_bruteforce_trivial_cases(make_instance):
    rep = evaluate_bruteforce(make_instance([(1, 1)]), ThresholdSchedule((1.0,)))
    assert (rep.alg_value, rep.opt_value, rep.ratio) == (1.0, 1.0, 1.0)
    rep = evaluate_bruteforce(make_instance([(1, 1)], [(2, 1)]), ThresholdSchedule((2.0, 1.0)))
    assert rep.alg_value == pytest.approx(2.0) and rep.ratio == pytest.approx(1.0)


def test_point_mass_on_threshold_is_accepted(make_instance):
    inst = make_instance([(3, 1)], [(1, 1)])
    rep = evaluate_exact(inst, ThresholdSchedule((3.0, 3.0)))
    assert rep.alg_value == pytest.approx(3.0)


def test_dp_matches_bruteforce_and_loop_oracle(rng):
    for _ in range(60):
        n = int(rng.integers(1, 5))
        inst = random_instance(rng, n)
        sched = random_non_increasing(rng, n)
        a, b = evaluate_exact(inst, sched), evaluate_bruteforce(inst, sched)
        assert_reports_close(a, b)
        assert a.alg_value == pytest.approx(enum_schedule_value(inst.distributions, sched.thresholds), abs=1e-9)


def test_dp_matches_bruteforce_arbitrary_schedules(rng):
    # increasing schedules are legal inputs too; only Prop. 2 needs monotonicity
    for _ in range(40):
        n = int(rng.integers(2, 5))
        inst = random_instance(rng, n)
        sched = ThresholdSchedule(tuple(rng.uniform(-1, 11, size=n)))
        assert_reports_close(evaluate_exact(inst, sched), evaluate_bruteforce(inst, sched))


def test_grouped_identical_distributions_match_bruteforce():
    d1 = DiscreteDistribution([(0, 0.5), (4, 0.5)])
    d2 = DiscreteDistribution([(2, 1.0)])
    inst = Instance((d1, d2, d1, d2, d1))
    sched = ThresholdSchedule((3.0, 3.0, 2.0, 1.0, 0.0), non_increasing=True)
    assert_reports_close(evaluate_exact(inst, sched), evaluate_bruteforce(inst, sched))


def test_one_threshold_hard_n4_dp_equals_bruteforce():
    inst = gen_one_threshold_hard(4)
    for t in single_threshold_candidates(inst):
        s = uniform_schedule(5, t)
        assert_reports_close(evaluate_exact(inst, s), evaluate_bruteforce(inst, s))


def test_report_invariants(rng):
    for _ in range(100):
        n = int(rng.integers(1, 7))
        inst = random_instance(rng, n)
        rep = evaluate_exact(inst, random_non_increasing(rng, n))
        th = rep.passing.theta
        assert np.all(np.diff(th) <= 1e-15) and np.all((th >= -1e-15) & (th <= 1 + 1e-15))
        assert rep.alg_value == pytest.approx(rep.per_step_value.sum(), abs=1e-9)
        assert rep.alg_value <= rep.opt_value + 1e-9
        if rep.opt_value > 0:
            assert rep.ratio == pytest.approx(rep.alg_value / rep.opt_value)


def test_theorem1_lemma_and_corollary_checks(rng):
    for _ in range(150):
        n = int(rng.integers(1, 7))
        inst = random_instance(rng, n)
        opt = expected_max(inst.distributions)
        if opt <= 0:
            continue
        sched = theorem1_schedule(n, opt)
        rep = evaluate_exact(inst, sched)
        assert np.all(lemma_tail_gaps(inst, sched) >= -1e-9)
        assert rep.alg_value >= theta_lower_bound(rep, sched.alphas) - 1e-9
        assert rep.ratio >= alpha_factors(n)[0] - 1e-9


def test_corollary_bound_for_other_non_increasing_factors(rng):
    for _ in range(100):
        n = int(rng.integers(1, 6))
        inst = random_instance(rng, n)
        opt = expected_max(inst.distributions)
        if opt <= 0:
            continue
        alphas = np.sort(rng.uniform(0, 1, size=n))[::-1]
        rep = evaluate_exact(inst, ThresholdSchedule(tuple(alphas * opt), non_increasing=True))
        assert rep.alg_value >= theta_lower_bound(rep, alphas) - 1e-9


def test_sweep_examples(make_instance):
    inst = make_instance(*[[(1, 1)]] * 4)
    t, r = sweep_single_threshold(inst)
    assert r == pytest.approx(1.0) and t == 1.0
    # candidates must contain support values and midpoints
    c = single_threshold_candidates(gen_075_hard(0.5))
    assert {0.0, 0.5, 1.0, 1.5, 2.0} <= set(c)


def test_sweep_candidate_set_is_exhaustive(rng):
    for _ in range(20):
        inst = random_instance(rng, int(rng.integers(2, 5)))
        _, best = sweep_single_threshold(inst)
        dense = np.linspace(-1, 12, 261)
        _, dense_best = sweep_single_threshold(inst, dense)
        assert best >= dense_best - 1e-12


def test_exact_rejects(make_instance):
    inst = make_instance([(1, 1)], [(2, 1)], [(3, 1)])
    with pytest.raises(ValueError):
        evaluate_exact(inst, secretary_schedule([1.0], 3))
    with pytest.raises(ValueError):
        evaluate_exact(inst, uniform_schedule(2, 1))
    with pytest.raises(ValueError):
        evaluate_exact(gen_min_iid_hard(3), uniform_schedule(3, 1))
    big = Instance(tuple(DiscreteDistribution.point_mass(float(i)) for i in range(22)))
    with pytest.raises(BudgetExceededError):
        evaluate_exact(big, uniform_schedule(22, 1))
    with pytest.raises(BudgetExceededError):
        evaluate_bruteforce(big, uniform_schedule(22, 1))

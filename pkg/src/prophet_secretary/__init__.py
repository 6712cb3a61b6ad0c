"""Threshold stopping rules for the prophet secretary problem."""

from .benchmark import (
    PolicyValue,
    iid_optimal_online_min,
    optimal_online_max,
    optimal_online_min,
    optimal_online_min_one_exchange,
)
from .distributions import Atom, DiscreteDistribution, expected_max, expected_min, mean, tail_prob
from .engine import Instance, RunOutcome, run_once, run_secretary
from .estimator import ThresholdStopper
from .exact import (
    BudgetExceededError,
    ExactReport,
    PassProbabilities,
    evaluate_bruteforce,
    evaluate_exact,
    sweep_single_threshold,
)
from .instances import (
    gen_075_hard,
    gen_min_exchange_hard,
    gen_min_iid_hard,
    gen_one_threshold_hard,
    gen_prophet_hard,
    load_instance,
    save_instance,
)
from .montecarlo import MCReport, estimate
from .schedules import (
    ThresholdSchedule,
    alpha_closed_form,
    alpha_factors,
    secretary_schedule,
    theorem1_schedule,
    uniform_schedule,
)

__version__ = "0.1.0"

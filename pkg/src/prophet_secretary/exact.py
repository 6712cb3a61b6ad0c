"""Exact evaluation of non-adaptive threshold schedules under random order.

The main path is a dynamic program over subsets of distributions. For a
subset S let g(S) be the sum, over all orderings s of S, of the probability
that the first |S| arrivals in that order are all rejected:

    g(S) = sum_{i in S} g(S - {i}) * P[X_i < tau_{|S|}],     g({}) = 1.

Every pass probability and per-step payoff is a sum of g over subsets of a
given size, divided by the number of ordered prefixes. Subsets that differ
only by swapping identical distributions share one DP state. A brute-force
enumeration over permutations and outcome tuples serves as the oracle.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .distributions import below_prob, expected_max, max_tail_integral, partial_mean_above
from .engine import MAXIMIZE, Instance
from ._lattice import BudgetExceededError, Lattice, group_distributions
from .schedules import ThresholdSchedule, uniform_schedule

BRUTE_BUDGET = 10**7


@dataclass(frozen=True)
class PassProbabilities:
    """theta[k-1] = P[first k arrivals all rejected].

    q_minus[i, k-1] = P[first k arrivals all rejected | none of them is X_i],
    for k = 1..n-1.
    """

    theta: np.ndarray
    q_minus: np.ndarray


@dataclass(frozen=True)
class ExactReport:
    alg_value: float
    opt_value: float
    ratio: float
    passing: PassProbabilities
    per_step_value: np.ndarray

    def to_dict(self) -> dict:
        return {
            "alg_value": self.alg_value,
            "opt_value": self.opt_value,
            "ratio": self.ratio,
            "theta": self.passing.theta.tolist(),
            "q_minus": self.passing.q_minus.tolist(),
            "per_step_value": self.per_step_value.tolist(),
        }


def _check(instance: Instance, schedule: ThresholdSchedule):
    if instance.objective != MAXIMIZE:
        raise ValueError("exact schedule evaluation is defined for maximisation")
    if schedule.adaptive:
        raise ValueError("adaptive schedules cannot be evaluated exactly")
    if len(schedule) != instance.n:
        raise ValueError(f"schedule has {len(schedule)} thresholds for n={instance.n}")


def _report(instance, alg_steps, theta, q_minus) -> ExactReport:
    opt = expected_max(instance.distributions)
    alg = math.fsum(alg_steps)
    ratio = alg / opt if opt != 0 else math.nan
    return ExactReport(
        alg_value=alg,
        opt_value=opt,
        ratio=ratio,
        passing=PassProbabilities(np.asarray(theta), np.asarray(q_minus)),
        per_step_value=np.asarray(alg_steps),
    )


def pass_table(instance: Instance, schedule: ThresholdSchedule, lattice: Lattice | None = None):
    """Pass probability of every subset, up to symmetry.

    Returns ``(lattice, h)`` where ``h[c]`` is g(S) / |S|! for any subset S
    with group counts ``c``: the probability that a uniformly random ordering
    of S is rejected at steps 1..|S|. It obeys

        h(c) = (1/|c|) sum_j c_j * h(c - e_j) * P[X_j < tau_{|c|}].
    """
    lat = lattice or group_distributions(instance.distributions)
    reject = np.array([[below_prob(d, t) for t in schedule.thresholds] for d in lat.dists])
    h = np.zeros(lat.n_states)
    h[0] = 1.0
    for k in range(1, instance.n + 1):
        layer = lat.layer(k)
        acc = np.zeros(layer.size)
        for j in range(len(lat.dists)):
            c = lat.count(j, layer)
            has = c > 0
            acc[has] += c[has] * h[layer[has] - lat.strides[j]] * reject[j, k - 1]
        h[layer] = acc / k
    return lat, h


def evaluate_exact(instance: Instance, schedule: ThresholdSchedule) -> ExactReport:
    """Exact E[chosen value], pass probabilities and per-step payoffs.

    Identical distributions are grouped, so the DP runs over count vectors
    rather than raw subsets; with all distributions distinct that is the
    2^n subset lattice.
    """
    _check(instance, schedule)
    n = instance.n
    lat, h = pass_table(instance, schedule)
    k_of = lat.total

    # mass[k] = sum over subsets S with |S| = k of g(S)/k!
    mass = np.bincount(k_of, weights=lat.multiplicity() * h, minlength=n + 1)
    avoid = np.empty((len(lat.dists), n + 1))
    for j in range(len(lat.dists)):
        w = lat.multiplicity(drop_group=j) * h
        avoid[j] = np.bincount(k_of, weights=w, minlength=n + 1)

    theta = np.array([mass[k] / math.comb(n, k) for k in range(1, n + 1)])
    q_group = np.array(
        [[avoid[j, k] / math.comb(n - 1, k) for k in range(1, n)] for j in range(len(lat.dists))]
    ).reshape(len(lat.dists), n - 1)
    q_minus = np.empty((n, n - 1))
    for j, members in enumerate(lat.members):
        q_minus[members] = q_group[j]

    # E[z_k] = (1/n) * sum_i q_-i(k-1) * E[X_i 1{X_i >= tau_k}], q_-i(0) = 1
    steps = []
    for k in range(1, n + 1):
        tau = schedule.thresholds[k - 1]
        norm = math.comb(n - 1, k - 1)
        steps.append(
            math.fsum(
                lat.sizes[j] * avoid[j, k - 1] / norm * partial_mean_above(d, tau)
                for j, d in enumerate(lat.dists)
            )
            / n
        )
    return _report(instance, steps, theta, q_minus)


def evaluate_bruteforce(instance: Instance, schedule: ThresholdSchedule) -> ExactReport:
    """Enumerate every arrival order and every joint outcome."""
    _check(instance, schedule)
    n = instance.n
    ds = instance.distributions
    n_outcomes = math.prod(len(d) for d in ds)
    if math.factorial(n) * n_outcomes > BRUTE_BUDGET:
        raise BudgetExceededError(
            f"enumeration needs {math.factorial(n) * n_outcomes} cases, budget {BRUTE_BUDGET}"
        )

    # joint outcome table: values[o, i] and weight[o]
    grids = list(itertools.product(*[range(len(d)) for d in ds]))
    values = np.array([[ds[i].values[c[i]] for i in range(n)] for c in grids], dtype=float)
    weight = np.array([math.prod(ds[i].probs[c[i]] for i in range(n)) for c in grids])

    tau = schedule.as_array()
    p_perm = 1.0 / math.factorial(n)
    theta = np.zeros(n)
    pass_and_avoid = np.zeros((n, max(n - 1, 0)))
    steps = np.zeros(n)
    for perm in itertools.permutations(range(n)):
        arrivals = values[:, perm]
        accept = arrivals >= tau
        hit = accept.any(axis=1)
        first = np.where(hit, accept.argmax(axis=1), n)  # 0-based; n = never
        for k in range(1, n + 1):
            passed = weight[first >= k].sum() * p_perm
            theta[k - 1] += passed
            if k < n:
                for i in range(n):
                    if i not in perm[:k]:
                        pass_and_avoid[i, k - 1] += passed
        for k in range(n):
            rows = first == k
            steps[k] += p_perm * float(np.dot(weight[rows], arrivals[rows, k]))

    # P[i not among first k] = (n-k)/n
    q_minus = np.array(
        [[pass_and_avoid[i, k - 1] * n / (n - k) for k in range(1, n)] for i in range(n)]
    ).reshape(n, n - 1)
    return _report(instance, list(steps), theta, q_minus)


def single_threshold_candidates(instance: Instance) -> list[float]:
    """Support values, midpoints between them, and one point above the top.

    The ratio of a one-threshold rule only changes when the threshold crosses
    a support value, so these candidates cover every achievable ratio.
    """
    grid = sorted({v for d in instance.distributions for v in d.values})
    mids = [(a + b) / 2 for a, b in zip(grid, grid[1:])]
    return sorted(set(grid) | set(mids) | {grid[-1] + 1.0})


def sweep_single_threshold(
    instance: Instance, candidates: Sequence[float] | None = None
) -> tuple[float, float]:
    """Best (threshold, ratio) over one-threshold rules; ties go to the smaller threshold."""
    if candidates is None:
        candidates = single_threshold_candidates(instance)
    if len(candidates) == 0:
        raise ValueError("need at least one candidate threshold")
    best = None
    for t in sorted(candidates):
        r = evaluate_exact(instance, uniform_schedule(instance.n, t)).ratio
        if best is None or r > best[1]:
            best = (float(t), r)
    return best


def lemma_tail_gaps(instance: Instance, schedule: ThresholdSchedule) -> np.ndarray:
    """For each k: integral of P[max >= x] over [tau_k, inf) minus (1 - alpha_k) * OPT.

    Non-negative for any schedule of the form tau_k = alpha_k * OPT on
    non-negative values.
    """
    if schedule.alphas is None or schedule.opt is None:
        raise ValueError("schedule does not carry alpha factors")
    return np.array(
        [
            max_tail_integral(instance.distributions, t) - (1.0 - a) * schedule.opt
            for t, a in zip(schedule.thresholds, schedule.alphas)
        ]
    )


def theta_lower_bound(report: ExactReport, alphas: Sequence[float]) -> float:
    """OPT * (alpha_1 + sum_k theta(k) (1/n - alpha_k/n - alpha_k + alpha_{k+1})).

    A lower bound on the expected chosen value for thresholds alpha_k * OPT
    that are non-increasing, with alpha_{n+1} = 0.
    """
    a = list(alphas) + [0.0]
    n = len(alphas)
    theta = report.passing.theta
    s = math.fsum(
        theta[k] * (1.0 / n - a[k] / n - a[k] + a[k + 1]) for k in range(n)
    )
    return report.opt_value * (a[0] + s)

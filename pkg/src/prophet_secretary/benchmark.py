"""Optimal adaptive online values by backward induction.

Randomised online policies never beat the best deterministic one here: the
problem is a finite MDP, so its optimum is attained by a deterministic
policy and these values bound every randomised algorithm too.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .distributions import DiscreteDistribution, mean
from .engine import Instance
from ._lattice import BudgetExceededError, group_distributions

RANDOM = "random"
FIXED = "fixed"
ORDERS = (RANDOM, FIXED)
MAX_EXCHANGE_N = 12
EXCHANGE_STATE_BUDGET = 5 * 10**6


@dataclass(frozen=True)
class PolicyValue:
    value: float
    state_count: int


def _check_order(order):
    if order not in ORDERS:
        raise ValueError(f"order must be one of {ORDERS}, got {order!r}")


def _subset_dp(instance: Instance, combine, empty_value: float) -> PolicyValue:
    # V(S) = 1/|S| sum_{i in S} E[combine(X_i, V(S - i))], over group counts
    lat = group_distributions(instance.distributions)
    V = np.zeros(lat.n_states)
    V[0] = empty_value
    for k in range(1, instance.n + 1):
        layer = lat.layer(k)
        acc = np.zeros(layer.size)
        for j, d in enumerate(lat.dists):
            c = lat.count(j, layer)
            has = c > 0
            cont = V[layer[has] - lat.strides[j]]
            acc[has] += c[has] * (combine(d._value_array[None, :], cont[:, None]) @ d._prob_array)
        V[layer] = acc / k
    return PolicyValue(float(V[-1]), lat.n_states)


def _fixed_dp(instance: Instance, combine, empty_value: float) -> PolicyValue:
    v = empty_value
    for d in reversed(instance.distributions):
        v = float(combine(d._value_array, v) @ d._prob_array)
    return PolicyValue(v, instance.n + 1)


def optimal_online_max(instance: Instance, order: str = RANDOM) -> PolicyValue:
    """Best expected value of any online stopping policy (payoff 0 if none taken)."""
    _check_order(order)
    dp = _subset_dp if order == RANDOM else _fixed_dp
    return dp(instance, np.maximum, 0.0)


def optimal_online_min(instance: Instance, order: str = RANDOM) -> PolicyValue:
    """Smallest expected value of an online policy that must accept exactly one value."""
    _check_order(order)
    dp = _subset_dp if order == RANDOM else _fixed_dp
    # V(empty) = +inf forces acceptance of the last arrival
    return dp(instance, np.minimum, math.inf)


def iid_optimal_online_min(d: DiscreteDistribution, n: int) -> PolicyValue:
    """Minimisation optimum for n i.i.d. copies of ``d``; state is the count left."""
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    v = mean(d)
    xs, ps = d._value_array, d._prob_array
    for _ in range(int(n) - 1):
        v = float(np.minimum(xs, v) @ ps)
    return PolicyValue(v, int(n))


def optimal_online_min_one_exchange(instance: Instance, order: str = RANDOM) -> PolicyValue:
    """Minimisation optimum when the held value may be replaced once.

    State: remaining arrivals, the held value (or none) and whether the
    exchange was spent. A value not taken on arrival is lost, as is a
    replaced value. The policy must hold something once all arrivals are
    seen.
    """
    _check_order(order)
    n = instance.n
    if n > MAX_EXCHANGE_N:
        raise BudgetExceededError(f"exchange DP limited to n <= {MAX_EXCHANGE_N}, got {n}")
    ds = instance.distributions
    grid = sorted({v for d in ds for v in d.values})
    n_states = (1 << n if order == RANDOM else n + 1) * (2 * len(grid) + 1)
    if n_states > EXCHANGE_STATE_BUDGET:
        raise BudgetExceededError(f"exchange DP needs {n_states} states")
    NONE = None

    def step(i, rest, held, used):
        # expected final value when distribution i arrives now
        total = 0.0
        for x, p in zip(ds[i].values, ds[i].probs):
            if held is NONE:
                best = min(W(rest, x, False), W(rest, NONE, False))
            elif not used:
                best = min(W(rest, held, False), W(rest, x, True))
            else:
                best = W(rest, held, True)
            total += p * best
        return total

    if order == RANDOM:

        @lru_cache(maxsize=None)
        def W(mask, held, used):
            if mask == 0:
                return math.inf if held is NONE else held
            members = [i for i in range(n) if mask >> i & 1]
            return math.fsum(step(i, mask ^ (1 << i), held, used) for i in members) / len(members)

        value = W((1 << n) - 1, NONE, False)
    else:

        @lru_cache(maxsize=None)
        def W(pos, held, used):
            if pos == n:
                return math.inf if held is NONE else held
            return step(pos, pos + 1, held, used)

        value = W(0, NONE, False)
    return PolicyValue(float(value), W.cache_info().currsize)

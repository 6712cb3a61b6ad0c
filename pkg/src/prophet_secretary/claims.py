"""Reproduction experiments behind ``prophet-secretary repro <claim>``."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .benchmark import (
    FIXED,
    RANDOM,
    iid_optimal_online_min,
    optimal_online_max,
    optimal_online_min_one_exchange,
)
from .distributions import DiscreteDistribution, expected_max, expected_min
from .engine import Instance
from .exact import evaluate_exact, sweep_single_threshold
from .instances import (
    gen_075_hard,
    gen_min_exchange_hard,
    gen_one_threshold_hard,
    min_iid_hard_distribution,
)
from .schedules import ThresholdSchedule, alpha_closed_form_all, alpha_factors, theorem1_schedule


@dataclass
class ClaimResult:
    claim_id: str
    passed: bool
    lines: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"claim": self.claim_id, "passed": self.passed, "details": self.lines}


def random_instance(rng: np.random.Generator, n: int, max_support: int = 3) -> Instance:
    """Non-negative instance with small random supports (test battery use)."""
    dists = []
    for _ in range(n):
        k = int(rng.integers(1, max_support + 1))
        values = rng.choice(np.arange(0, 11), size=k, replace=False).astype(float)
        w = rng.random(k) + 0.05
        dists.append(DiscreteDistribution(zip(values, w / w.sum())))
    return Instance(tuple(dists))


def random_non_increasing(rng: np.random.Generator, n: int, top: float = 11.0) -> ThresholdSchedule:
    t = np.sort(rng.uniform(0.0, top, size=n))[::-1]
    # snap some thresholds onto integers so ties with support values are exercised
    snap = rng.random(n) < 0.3
    t[snap] = np.floor(t[snap])
    t = np.maximum.accumulate(t[::-1])[::-1]
    return ThresholdSchedule(tuple(t), non_increasing=True)


def thm1_alphas() -> ClaimResult:
    lines, ok = [], True
    a2 = alpha_factors(2)
    good = abs(a2[0] - 5 / 9) <= 1e-12 and abs(a2[1] - 1 / 3) <= 1e-12
    ok &= good
    lines.append(f"alpha_factors(2) = {a2} vs [5/9, 1/3]: {'ok' if good else 'FAIL'}")
    worst = 0.0
    for n in list(range(1, 101)) + [1000, 10000]:
        worst = max(worst, float(np.max(np.abs(np.array(alpha_factors(n)) - alpha_closed_form_all(n)))))
    ok &= worst <= 1e-10
    lines.append(f"max |recurrence - closed form| = {worst:.3e} (tol 1e-10)")
    gap = abs(alpha_factors(10000)[0] - (1 - 1 / math.e))
    ok &= gap <= 1e-4
    lines.append(f"|alpha_1(10^4) - (1 - 1/e)| = {gap:.3e} (tol 1e-4)")
    return ClaimResult("thm1-alphas", ok, lines)


def thm3_single_threshold() -> ClaimResult:
    lines, ok = [], True
    for n in (4, 10, 50):
        inst = gen_one_threshold_hard(n)
        opt = expected_max(inst.distributions)
        t, r = sweep_single_threshold(inst)
        bound = 0.5 + 1 / (2 * n)
        good = r <= bound + 1e-9 and abs(opt - 2) <= 1e-12
        ok &= good
        lines.append(
            f"n={n}: OPT={opt:.12g} best threshold={t:.6g} ratio={r:.6f} bound={bound:.6f} "
            f"{'ok' if good else 'FAIL'}"
        )
    return ClaimResult("thm3-single-threshold", ok, lines)


def thm2_075() -> ClaimResult:
    lines, ok = [], True
    for eps in (0.1, 0.01, 0.001):
        inst = gen_075_hard(eps)
        r = optimal_online_max(inst, RANDOM).value / expected_max(inst.distributions)
        closed = (1.5 - eps / 2) / (2 - eps)
        good = 0.75 <= r <= 0.75 + eps and abs(r - closed) <= 1e-9
        ok &= good
        lines.append(f"eps={eps}: ratio={r:.6f} closed form={closed:.6f} {'ok' if good else 'FAIL'}")
    return ClaimResult("thm2-075", ok, lines)


def two_threshold_59() -> ClaimResult:
    inst = gen_075_hard(0.01)
    rep = evaluate_exact(inst, theorem1_schedule(2, expected_max(inst.distributions)))
    ok = rep.ratio >= 5 / 9 - 1e-9 and rep.ratio > 0.5
    return ClaimResult(
        "two-threshold-59", ok, [f"ratio={rep.ratio:.6f} vs 5/9={5 / 9:.6f} {'ok' if ok else 'FAIL'}"]
    )


def thm4_min_iid() -> ClaimResult:
    lines, ok = [], True
    for n in range(5, 31):
        d = min_iid_hard_distribution(n)
        ratio = iid_optimal_online_min(d, n).value / expected_min([d] * n)
        bound = 1.11**n / 6
        good = ratio >= bound
        ok &= good
        if n in (5, 10, 20, 30) or not good:
            lines.append(f"n={n}: ratio={ratio:.4f} bound={bound:.4f} {'ok' if good else 'FAIL'}")
    return ClaimResult("thm4-min-iid", ok, lines)


def thm5_exchange() -> ClaimResult:
    lines, ok = [], True
    for eps in (0.1, 0.02):
        inst = gen_min_exchange_hard(eps)
        off = expected_min(inst.distributions)
        fixed = optimal_online_min_one_exchange(inst, FIXED).value
        rand = optimal_online_min_one_exchange(inst, RANDOM).value
        g1 = fixed >= eps - 1e-9 and fixed / off >= 1 / (2 * eps) - 1e-9
        g2 = rand / off >= 1 / (12 * eps) - 1e-9
        ok &= g1 and g2
        lines.append(
            f"eps={eps}: offline={off:.6g} fixed={fixed:.6g} (ratio {fixed / off:.3f} >= {1 / (2 * eps):.3f}) "
            f"random={rand:.6g} (ratio {rand / off:.3f} >= {1 / (12 * eps):.3f}) {'ok' if g1 and g2 else 'FAIL'}"
        )
    return ClaimResult("thm5-exchange", ok, lines)


def prop2_check(instances: int = 300, seed: int = 2024) -> ClaimResult:
    rng = np.random.default_rng(seed)
    worst = -math.inf
    for _ in range(instances):
        n = int(rng.integers(2, 7))
        inst = random_instance(rng, n)
        rep = evaluate_exact(inst, random_non_increasing(rng, n))
        th, q = rep.passing.theta, rep.passing.q_minus
        # theta(k+1) - q_{-i}(k) for k = 1..n-1
        worst = max(worst, float(np.max(th[1:][None, :] - q)))
    ok = worst <= 1e-12
    return ClaimResult(
        "prop2-check", ok, [f"{instances} instances: max theta(k+1) - q_-i(k) = {worst:.3e} (tol 1e-12)"]
    )


CLAIMS = {
    "thm1-alphas": thm1_alphas,
    "thm3-single-threshold": thm3_single_threshold,
    "thm2-075": thm2_075,
    "two-threshold-59": two_threshold_59,
    "thm4-min-iid": thm4_min_iid,
    "thm5-exchange": thm5_exchange,
    "prop2-check": prop2_check,
}

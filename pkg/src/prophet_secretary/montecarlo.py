"""Monte Carlo estimates of a stopping rule's expected payoff."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .engine import (
    MAXIMIZE,
    Instance,
    make_generator,
    simulate_secretary,
    simulate_threshold,
)
from .schedules import ThresholdSchedule

BLOCK = 1 << 14
Z95 = 1.96


@dataclass(frozen=True)
class MCReport:
    mean: float
    half_width_95: float
    trials: int
    seed: int

    @property
    def interval(self) -> tuple[float, float]:
        return self.mean - self.half_width_95, self.mean + self.half_width_95

    def covers(self, x: float) -> bool:
        lo, hi = self.interval
        return lo <= x <= hi

    def to_dict(self) -> dict:
        return {
            "mean": self.mean,
            "half_width_95": self.half_width_95,
            "trials": self.trials,
            "seed": self.seed,
        }


def _blocks(trials):
    # block b covers trials [b*BLOCK, min((b+1)*BLOCK, trials))
    return [(b, min(BLOCK, trials - b * BLOCK)) for b in range(math.ceil(trials / BLOCK))]


def _run(simulate, trials, seed, workers) -> MCReport:
    if isinstance(trials, bool) or int(trials) != trials or trials < 1:
        raise ValueError(f"trials must be a positive integer, got {trials!r}")
    trials = int(trials)

    def block_stats(job):
        b, size = job
        chosen = simulate(make_generator(seed, b), size)
        m = float(chosen.mean())
        return size, m, float(((chosen - m) ** 2).sum())

    jobs = _blocks(trials)
    if workers and workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            stats = list(ex.map(block_stats, jobs))
    else:
        stats = [block_stats(j) for j in jobs]

    # merge (count, mean, M2) in block order so the result ignores worker count
    count, mu, m2 = stats[0]
    for c, m, s in stats[1:]:
        tot = count + c
        delta = m - mu
        mu += delta * c / tot
        m2 += s + delta * delta * count * c / tot
        count = tot
    std = math.sqrt(m2 / (count - 1)) if count > 1 else 0.0
    return MCReport(mu, Z95 * std / math.sqrt(count), count, seed)


def estimate(
    instance: Instance, schedule: ThresholdSchedule, trials: int, seed, workers: int = 1
) -> MCReport:
    """Mean chosen value of the threshold rule over ``trials`` episodes.

    Trials are simulated in blocks of ``BLOCK`` episodes; block ``b`` draws
    from the generator stream ``(seed, b)``. The estimate is therefore the
    same for any ``workers``. With a single trial the result equals
    ``run_once(instance, schedule, seed).chosen_value``.
    """
    if instance.objective != MAXIMIZE:
        raise ValueError("Monte Carlo estimation is defined for maximisation")
    if len(schedule) != instance.n:
        raise ValueError(f"schedule has {len(schedule)} thresholds for n={instance.n}")
    tau = schedule.as_array()
    return _run(
        lambda rng, size: simulate_threshold(instance, tau, rng, size)[3],
        trials,
        seed,
        workers,
    )


def estimate_secretary(instance: Instance, trials: int, seed, workers: int = 1) -> MCReport:
    if instance.objective != MAXIMIZE or instance.n < 2:
        raise ValueError("the secretary rule needs a maximisation instance with n >= 2")
    return _run(
        lambda rng, size: simulate_secretary(instance, rng, size)[3],
        trials,
        seed,
        workers,
    )

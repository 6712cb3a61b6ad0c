"""Single-episode simulation of the sequential threshold stopping process.

Randomness comes from numpy's Philox4x32 counter-based generator keyed by a
``SeedSequence(seed, spawn_key=(stream,))``. Episode ``run_once(.., seed)``
uses stream 0; Monte Carlo batches use one stream per block of trials. The
draw order inside a batch of ``size`` episodes is fixed:

1. ``rng.random((size, n))`` -- one uniform per distribution, mapped through
   each distribution's inverse CDF;
2. ``rng.permuted(tile(arange(n)), axis=1)`` -- the arrival order.

Both numpy primitives are platform independent, so a seed reproduces the
same outcome everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .distributions import DiscreteDistribution
from .schedules import ThresholdSchedule, secretary_prefix_length

MAXIMIZE = "max"
MINIMIZE = "min"
OBJECTIVES = (MAXIMIZE, MINIMIZE)


@dataclass(frozen=True)
class Instance:
    distributions: tuple[DiscreteDistribution, ...]
    objective: str = MAXIMIZE
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "distributions", tuple(self.distributions))
        if not self.distributions:
            raise ValueError("an instance needs at least one distribution")
        for i, d in enumerate(self.distributions):
            if not isinstance(d, DiscreteDistribution):
                raise TypeError(f"distribution {i} is {type(d).__name__}")
        if self.objective not in OBJECTIVES:
            raise ValueError(f"objective must be one of {OBJECTIVES}, got {self.objective!r}")

    @property
    def n(self) -> int:
        return len(self.distributions)

    def __len__(self):
        return self.n


@dataclass(frozen=True)
class RunOutcome:
    """One episode.

    ``permutation[k]`` is the distribution revealed at step k+1 and
    ``drawn_values[i]`` is X_i, indexed by distribution. ``stop_step`` is
    1-based, or None when every value was rejected.
    """

    permutation: tuple[int, ...]
    stop_step: int | None
    chosen_value: float
    drawn_values: tuple[float, ...]

    @property
    def arrivals(self) -> tuple[float, ...]:
        return tuple(self.drawn_values[i] for i in self.permutation)


def make_generator(seed, stream: int = 0) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(stream,))
    return np.random.Generator(np.random.Philox(ss))


def draw_batch(instance: Instance, rng: np.random.Generator, size: int):
    """Draw values (by distribution) and arrival orders for ``size`` episodes."""
    n = instance.n
    u = rng.random((size, n))
    values = np.empty((size, n))
    for i, d in enumerate(instance.distributions):
        values[:, i] = d.ppf(u[:, i])
    perms = rng.permuted(np.tile(np.arange(n), (size, 1)), axis=1)
    return values, perms


def first_crossing(arrivals: np.ndarray, thresholds: np.ndarray):
    """0-based stop index per row (-1 if none) and the chosen value (0 if none)."""
    accept = arrivals >= thresholds
    hit = accept.any(axis=1)
    idx = np.where(hit, accept.argmax(axis=1), -1)
    rows = np.arange(arrivals.shape[0])
    chosen = np.where(hit, arrivals[rows, np.maximum(idx, 0)], 0.0)
    return idx, chosen


def secretary_crossing(arrivals: np.ndarray):
    """Observe the first floor(n/e) arrivals, then take the first strict record."""
    size, n = arrivals.shape
    m = secretary_prefix_length(n)
    best = arrivals[:, :m].max(axis=1) if m else np.full(size, -np.inf)
    accept = arrivals > best[:, None]
    accept[:, :m] = False
    hit = accept.any(axis=1)
    idx = np.where(hit, accept.argmax(axis=1), -1)
    rows = np.arange(size)
    chosen = np.where(hit, arrivals[rows, np.maximum(idx, 0)], 0.0)
    return idx, chosen


def simulate_threshold(instance: Instance, thresholds: Sequence[float], rng, size: int):
    values, perms = draw_batch(instance, rng, size)
    arrivals = np.take_along_axis(values, perms, axis=1)
    idx, chosen = first_crossing(arrivals, np.asarray(thresholds, dtype=float))
    return values, perms, idx, chosen


def simulate_secretary(instance: Instance, rng, size: int):
    values, perms = draw_batch(instance, rng, size)
    arrivals = np.take_along_axis(values, perms, axis=1)
    idx, chosen = secretary_crossing(arrivals)
    return values, perms, idx, chosen


def _outcome(values, perms, idx, chosen) -> RunOutcome:
    k = int(idx[0])
    return RunOutcome(
        permutation=tuple(int(p) for p in perms[0]),
        stop_step=None if k < 0 else k + 1,
        chosen_value=float(chosen[0]),
        drawn_values=tuple(float(v) for v in values[0]),
    )


def _check_schedule(instance: Instance, schedule: ThresholdSchedule):
    if instance.objective != MAXIMIZE:
        raise ValueError(
            "fixed-threshold runs are only defined for maximisation; "
            "use the benchmark policies for minimisation"
        )
    if len(schedule) != instance.n:
        raise ValueError(f"schedule has {len(schedule)} thresholds for n={instance.n}")


def run_once(instance: Instance, schedule: ThresholdSchedule, seed) -> RunOutcome:
    _check_schedule(instance, schedule)
    rng = make_generator(seed)
    return _outcome(*simulate_threshold(instance, schedule.thresholds, rng, 1))


def run_secretary(instance: Instance, seed) -> RunOutcome:
    if instance.n < 2:
        raise ValueError("the secretary rule needs n >= 2")
    if instance.objective != MAXIMIZE:
        raise ValueError("the secretary rule is defined for maximisation only")
    rng = make_generator(seed)
    return _outcome(*simulate_secretary(instance, rng, 1))

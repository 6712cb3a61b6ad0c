"""Threshold schedules for the sequential stopping rule."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

INF = math.inf  # reject-always sentinel; compared against, never multiplied


@dataclass(frozen=True)
class ThresholdSchedule:
    """Per-step acceptance cutoffs tau_1..tau_n.

    ``alphas`` and ``opt`` are kept when the thresholds were produced as
    ``alpha_k * opt``. ``adaptive`` marks schedules that were built from
    observed values and therefore cannot be evaluated exactly.
    """

    thresholds: tuple[float, ...]
    alphas: tuple[float, ...] | None = None
    opt: float | None = None
    non_increasing: bool = False
    adaptive: bool = False
    kind: str = field(default="list", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "thresholds", tuple(float(t) for t in self.thresholds))
        if not self.thresholds:
            raise ValueError("a schedule needs at least one threshold")
        if any(math.isnan(t) for t in self.thresholds):
            raise ValueError("thresholds must not be NaN")
        if self.non_increasing and not is_non_increasing(self.thresholds):
            raise ValueError("schedule tagged non-increasing has an increasing step")

    def __len__(self):
        return len(self.thresholds)

    def __iter__(self):
        return iter(self.thresholds)

    def __getitem__(self, k):
        return self.thresholds[k]

    def as_array(self) -> np.ndarray:
        return np.array(self.thresholds, dtype=float)


def is_non_increasing(values: Sequence[float]) -> bool:
    return all(a >= b for a, b in zip(values, values[1:]))


def _check_n(n):
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    return int(n)


def alpha_factors(n: int) -> list[float]:
    """Threshold factors alpha_1..alpha_n by backward iteration.

    alpha_n = 1/(n+1) and alpha_k = (n * alpha_{k+1} + 1) / (n+1).
    """
    n = _check_n(n)
    alphas = [0.0] * n
    nxt = 0.0  # alpha_{n+1}
    for k in range(n - 1, -1, -1):
        nxt = (n * nxt + 1.0) / (n + 1.0)
        alphas[k] = nxt
    return alphas


def _closed_form_terms(n: int) -> np.ndarray:
    # n^i / (n+1)^(i+1) for i = 0..n-1, written as r^i / (n+1) to avoid overflow
    i = np.arange(n, dtype=float)
    return np.power(n / (n + 1.0), i) / (n + 1.0)


def alpha_closed_form(n: int, k: int) -> float:
    """alpha_k as the finite sum over i = 0..n-k of n^i / (n+1)^(i+1)."""
    n = _check_n(n)
    if isinstance(k, bool) or int(k) != k or not 1 <= k <= n:
        raise ValueError(f"step index k must lie in 1..{n}, got {k!r}")
    return math.fsum(_closed_form_terms(n)[: n - int(k) + 1])


def alpha_closed_form_all(n: int) -> np.ndarray:
    """Vectorised closed form for every k = 1..n."""
    n = _check_n(n)
    partial = np.cumsum(_closed_form_terms(n))
    # alpha_k uses n-k+1 terms
    return partial[::-1].copy()


def theorem1_schedule(n: int, opt: float) -> ThresholdSchedule:
    if not opt > 0:
        raise ValueError(f"opt must be positive, got {opt!r}")
    alphas = alpha_factors(n)
    return ThresholdSchedule(
        thresholds=tuple(a * opt for a in alphas),
        alphas=tuple(alphas),
        opt=float(opt),
        non_increasing=True,
        kind="theorem1",
    )


def two_threshold_schedule(n: int, first: float, second: float) -> ThresholdSchedule:
    """``first`` for the first ceil(n/2) steps, ``second`` afterwards."""
    n = _check_n(n)
    half = (n + 1) // 2
    thresholds = [first] * half + [second] * (n - half)
    return ThresholdSchedule(
        tuple(thresholds), non_increasing=first >= second, kind="two"
    )


def uniform_schedule(n: int, threshold: float) -> ThresholdSchedule:
    n = _check_n(n)
    return ThresholdSchedule((threshold,) * n, non_increasing=True, kind="uniform")


def secretary_prefix_length(n: int) -> int:
    return math.floor(_check_n(n) / math.e)


def secretary_schedule(observed_prefix: Sequence[float], n: int) -> ThresholdSchedule:
    """Observe floor(n/e) values, then use their maximum as the threshold."""
    m = secretary_prefix_length(n)
    if len(observed_prefix) != m:
        raise ValueError(
            f"secretary prefix for n={n} has length {m}, got {len(observed_prefix)}"
        )
    cut = max(observed_prefix) if m else -INF
    return ThresholdSchedule(
        (INF,) * m + (cut,) * (n - m), adaptive=True, kind="secretary"
    )

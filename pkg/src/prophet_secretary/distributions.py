"""Finite discrete distributions and exact order-statistic expectations."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

TOL = 1e-12


@dataclass(frozen=True)
class Atom:
    value: float
    prob: float

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError(f"atom value must be finite, got {self.value!r}")
        if not (0.0 < self.prob <= 1.0 + TOL):
            raise ValueError(f"atom probability must lie in (0, 1], got {self.prob!r}")


class DiscreteDistribution:
    """A distribution over finitely many real values.

    Atoms are stored sorted by value with duplicates merged, so two
    distributions built from the same pairs in any order compare equal.
    Instances are immutable.

    >>> d = DiscreteDistribution([(3, 1/3), (0, 2/3)])
    >>> d.values
    (0.0, 3.0)
    """

    def __init__(self, atoms: Iterable[Atom | tuple[float, float]]):
        merged: dict[float, float] = {}
        for a in atoms:
            if not isinstance(a, Atom):
                a = Atom(float(a[0]), float(a[1]))
            merged[a.value] = merged.get(a.value, 0.0) + a.prob
        if not merged:
            raise ValueError("a distribution needs at least one atom")
        total = math.fsum(merged.values())
        if abs(total - 1.0) > TOL:
            raise ValueError(f"probabilities sum to {total!r}, expected 1")
        self._atoms = tuple(Atom(v, merged[v]) for v in sorted(merged))

    @classmethod
    def point_mass(cls, value: float) -> "DiscreteDistribution":
        return cls([(value, 1.0)])

    @property
    def atoms(self) -> tuple[Atom, ...]:
        return self._atoms

    @cached_property
    def values(self) -> tuple[float, ...]:
        return tuple(a.value for a in self._atoms)

    @cached_property
    def probs(self) -> tuple[float, ...]:
        return tuple(a.prob for a in self._atoms)

    @cached_property
    def _value_array(self) -> np.ndarray:
        arr = np.array(self.values, dtype=float)
        arr.flags.writeable = False
        return arr

    @cached_property
    def _prob_array(self) -> np.ndarray:
        arr = np.array(self.probs, dtype=float)
        arr.flags.writeable = False
        return arr

    @cached_property
    def _cdf_array(self) -> np.ndarray:
        c = np.cumsum(self._prob_array)
        c[-1] = 1.0
        c.flags.writeable = False
        return c

    def __len__(self):
        return len(self._atoms)

    def __eq__(self, other):
        if not isinstance(other, DiscreteDistribution):
            return NotImplemented
        return self._atoms == other._atoms

    def __hash__(self):
        return hash(self._atoms)

    def __repr__(self):
        body = ", ".join(f"({a.value!r}, {a.prob!r})" for a in self._atoms)
        return f"DiscreteDistribution([{body}])"

    def isclose(self, other: "DiscreteDistribution", tol: float = TOL) -> bool:
        if len(self) != len(other):
            return False
        return all(
            abs(a.value - b.value) <= tol and abs(a.prob - b.prob) <= tol
            for a, b in zip(self._atoms, other._atoms)
        )

    def ppf(self, u):
        """Inverse CDF: map uniforms in [0, 1) onto support values."""
        idx = np.searchsorted(self._cdf_array, u, side="right")
        return self._value_array[np.minimum(idx, len(self) - 1)]


def tail_prob(d: DiscreteDistribution, x: float) -> float:
    """P[X >= x]."""
    return math.fsum(a.prob for a in d.atoms if a.value >= x)


def below_prob(d: DiscreteDistribution, x: float) -> float:
    """P[X < x], the probability a threshold of ``x`` rejects the draw."""
    return math.fsum(a.prob for a in d.atoms if a.value < x)


def mean(d: DiscreteDistribution) -> float:
    return math.fsum(a.value * a.prob for a in d.atoms)


def partial_mean_above(d: DiscreteDistribution, x: float) -> float:
    """E[X * 1{X >= x}]."""
    return math.fsum(a.value * a.prob for a in d.atoms if a.value >= x)


def support_grid(ds: Sequence[DiscreteDistribution]) -> np.ndarray:
    return np.unique(np.concatenate([d._value_array for d in ds]))


def _cdf_on(d: DiscreteDistribution, grid: np.ndarray) -> np.ndarray:
    # P[X <= g] for every grid point
    idx = np.searchsorted(d._value_array, grid, side="right")
    c = np.concatenate([[0.0], d._cdf_array])
    return c[idx]


def max_pmf(ds: Sequence[DiscreteDistribution]) -> tuple[np.ndarray, np.ndarray]:
    """Support grid and point masses of max(X_1..X_n) for independent X_i."""
    if not ds:
        raise ValueError("need at least one distribution")
    grid = support_grid(ds)
    cdf = np.ones_like(grid)
    for d in ds:
        cdf *= _cdf_on(d, grid)
    pmf = np.diff(np.concatenate([[0.0], cdf]))
    return grid, pmf


def min_pmf(ds: Sequence[DiscreteDistribution]) -> tuple[np.ndarray, np.ndarray]:
    """Support grid and point masses of min(X_1..X_n) for independent X_i."""
    if not ds:
        raise ValueError("need at least one distribution")
    grid = support_grid(ds)
    surv = np.ones_like(grid)
    for d in ds:
        surv *= 1.0 - _cdf_on(d, grid)
    pmf = -np.diff(np.concatenate([[1.0], surv]))
    return grid, pmf


def expected_max(ds: Sequence[DiscreteDistribution]) -> float:
    grid, pmf = max_pmf(ds)
    return math.fsum(grid * pmf)


def expected_min(ds: Sequence[DiscreteDistribution]) -> float:
    grid, pmf = min_pmf(ds)
    return math.fsum(grid * pmf)


def max_tail_integral(ds: Sequence[DiscreteDistribution], lower: float) -> float:
    """Integral of P[max X_i >= x] dx over [lower, inf).

    Exact on the finite grid: the integrand is a step function that only
    changes at support values.
    """
    grid, pmf = max_pmf(ds)
    # P[max >= g_j] for each grid point
    tail = np.cumsum(pmf[::-1])[::-1]
    prev = np.concatenate([[-np.inf], grid[:-1]])
    # on (g_{j-1}, g_j] the integrand equals P[max >= g_j]
    left = np.maximum(prev, lower)
    width = np.clip(grid - left, 0.0, None)
    return math.fsum(width * tail)

"""scikit-learn style wrapper around the threshold stopping rule.

``fit`` reads the known distributions and fixes the thresholds; ``predict``
then applies the rule to rows of already-ordered arrival values, so the rule
can sit in ordinary numpy / sklearn tooling::

    stopper = ThresholdStopper(schedule="theorem1").fit(instance)
    X = sample_arrivals(instance, 10_000, seed=7)
    stopper.score(X)   # mean chosen value / OPT
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted

from .distributions import expected_max
from .engine import MAXIMIZE, Instance, draw_batch, first_crossing, make_generator
from .schedules import ThresholdSchedule, theorem1_schedule, two_threshold_schedule, uniform_schedule

SCHEDULES = ("theorem1", "uniform", "two", "list")


def check_instance(instance) -> Instance:
    if not isinstance(instance, Instance):
        raise TypeError(f"expected an Instance, got {type(instance).__name__}")
    if instance.objective != MAXIMIZE:
        raise ValueError("ThresholdStopper only handles maximisation instances")
    return instance


def check_arrivals(X, n_features=None) -> np.ndarray:
    """Validate a 2-D float array of arrival values, one episode per row."""
    X = check_array(X, dtype=float, ensure_all_finite=True)
    if n_features is not None and X.shape[1] != n_features:
        raise ValueError(f"X has {X.shape[1]} columns, the stopper was fit for {n_features}")
    return X


def sample_arrivals(instance: Instance, size: int, seed=None) -> np.ndarray:
    """Random-order arrival values, shape (size, n)."""
    values, perms = draw_batch(instance, make_generator(seed), size)
    return np.take_along_axis(values, perms, axis=1)


class ThresholdStopper(BaseEstimator):
    """Accept the first arrival at step k whose value reaches tau_k.

    Parameters
    ----------
    schedule : {"theorem1", "uniform", "two", "list"}
        How thresholds are built at fit time. ``theorem1`` uses the
        alpha-factor recurrence times OPT. ``uniform`` uses ``fraction``
        times OPT at every step, ``two`` uses ``fractions`` (first half,
        second half) times OPT, and ``list`` takes ``thresholds`` verbatim.
    fraction : float
        Used by ``uniform``.
    fractions : tuple of two floats
        Used by ``two``.
    thresholds : sequence of float or None
        Used by ``list``.
    """

    def __init__(self, schedule="theorem1", fraction=0.5, fractions=(5 / 9, 1 / 3), thresholds=None):
        self.schedule = schedule
        self.fraction = fraction
        self.fractions = fractions
        self.thresholds = thresholds

    def fit(self, instance, y=None):
        instance = check_instance(instance)
        n = instance.n
        self.opt_ = expected_max(instance.distributions)
        if self.schedule == "theorem1":
            sched = theorem1_schedule(n, self.opt_)
        elif self.schedule == "uniform":
            sched = uniform_schedule(n, self.fraction * self.opt_)
        elif self.schedule == "two":
            a, b = self.fractions
            sched = two_threshold_schedule(n, a * self.opt_, b * self.opt_)
        elif self.schedule == "list":
            if self.thresholds is None or len(self.thresholds) != n:
                raise ValueError(f"schedule='list' needs {n} thresholds")
            sched = ThresholdSchedule(tuple(self.thresholds))
        else:
            raise ValueError(f"schedule must be one of {SCHEDULES}, got {self.schedule!r}")
        self.schedule_ = sched
        self.thresholds_ = sched.as_array()
        self.n_features_in_ = n
        return self

    def predict_stop_step(self, X) -> np.ndarray:
        """1-based stop step per row, 0 where nothing was accepted."""
        check_is_fitted(self)
        X = check_arrivals(X, self.n_features_in_)
        idx, _ = first_crossing(X, self.thresholds_)
        return idx + 1

    def predict(self, X) -> np.ndarray:
        """Chosen value per row (0 where nothing was accepted)."""
        check_is_fitted(self)
        X = check_arrivals(X, self.n_features_in_)
        return first_crossing(X, self.thresholds_)[1]

    def score(self, X, y=None) -> float:
        """Empirical competitive ratio: mean chosen value over OPT."""
        return float(self.predict(X).mean() / self.opt_)

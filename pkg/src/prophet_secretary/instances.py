"""Named hard instances and the JSON instance file format.

An instance file (conventionally ``<name>.instance.json``) looks like::

    {
      "name": "gen_075_hard(0.01)",
      "objective": "max",
      "distributions": [
        {"support": [{"value": "1.0", "prob": "1.0"}]},
        {"support": [{"value": "0.0", "prob": "0.99"},
                     {"value": "100.0", "prob": "0.01"}]}
      ]
    }

Values and probabilities may be JSON numbers or decimal strings; they are
written as shortest round-trip decimal strings so a save/load cycle is exact.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .distributions import DiscreteDistribution
from .engine import MAXIMIZE, MINIMIZE, OBJECTIVES, Instance

PROB_SUM_TOL = 1e-9


class InstanceFormatError(ValueError):
    """An instance file could not be parsed or failed validation."""


def _check_eps(eps):
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps!r}")


def gen_prophet_hard(eps: float) -> Instance:
    """A sure 1 followed by 1/eps with probability eps (adversarial order)."""
    _check_eps(eps)
    return Instance(
        (
            DiscreteDistribution.point_mass(1.0),
            DiscreteDistribution([(0.0, 1.0 - eps), (1.0 / eps, eps)]),
        ),
        MAXIMIZE,
        f"prophet_hard(eps={eps!r})",
    )


def gen_075_hard(eps: float) -> Instance:
    """Same two distributions as ``gen_prophet_hard``, meant for random order."""
    inst = gen_prophet_hard(eps)
    return Instance(inst.distributions, MAXIMIZE, f"075_hard(eps={eps!r})")


def gen_one_threshold_hard(n: int) -> Instance:
    """n point masses at 1/(1-1/n) plus one {0 w.p. 1-1/n, n w.p. 1/n}."""
    if isinstance(n, bool) or int(n) != n or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    n = int(n)
    sure = DiscreteDistribution.point_mass(1.0 / (1.0 - 1.0 / n))
    risky = DiscreteDistribution([(0.0, 1.0 - 1.0 / n), (float(n), 1.0 / n)])
    return Instance((sure,) * n + (risky,), MAXIMIZE, f"one_threshold_hard(n={n})")


def min_iid_hard_distribution(n: int) -> DiscreteDistribution:
    return DiscreteDistribution([(0.0, 1 / 3), (1.0, 1 / 3), (float(2**n), 1 / 3)])


def gen_min_iid_hard(n: int) -> Instance:
    """n i.i.d. copies of {0, 1, 2^n}, each with probability 1/3; minimise."""
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    d = min_iid_hard_distribution(int(n))
    return Instance((d,) * int(n), MINIMIZE, f"min_iid_hard(n={n})")


def gen_min_exchange_hard(eps: float) -> Instance:
    _check_eps(eps)
    return Instance(
        (
            DiscreteDistribution.point_mass(1.0),
            DiscreteDistribution([(eps / (1.0 - eps), 1.0 - eps), (1.0 / eps, eps)]),
            DiscreteDistribution([(0.0, 1.0 - eps), (1.0 / eps, eps)]),
        ),
        MINIMIZE,
        f"min_exchange_hard(eps={eps!r})",
    )


# -- serialisation ---------------------------------------------------------


def instance_to_dict(instance: Instance) -> dict:
    return {
        "name": instance.name,
        "objective": instance.objective,
        "distributions": [
            {"support": [{"value": repr(a.value), "prob": repr(a.prob)} for a in d.atoms]}
            for d in instance.distributions
        ],
    }


def _number(raw, where):
    if isinstance(raw, bool) or not isinstance(raw, (int, float, str)):
        raise InstanceFormatError(f"{where}: expected a number or decimal string, got {raw!r}")
    try:
        x = float(raw)
    except ValueError:
        raise InstanceFormatError(f"{where}: cannot parse {raw!r} as a number") from None
    if not math.isfinite(x):
        raise InstanceFormatError(f"{where}: value must be finite, got {raw!r}")
    return x


def instance_from_dict(doc) -> Instance:
    if not isinstance(doc, dict):
        raise InstanceFormatError("top level: expected an object")
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise InstanceFormatError("name: expected a string")
    objective = doc.get("objective", MAXIMIZE)
    if objective not in OBJECTIVES:
        raise InstanceFormatError(f"objective: expected one of {OBJECTIVES}, got {objective!r}")
    raw = doc.get("distributions")
    if not isinstance(raw, list):
        raise InstanceFormatError("distributions: expected a list")
    if not raw:
        raise InstanceFormatError("distributions: list is empty")

    dists = []
    for i, entry in enumerate(raw):
        where = f"distributions[{i}]"
        support = entry.get("support") if isinstance(entry, dict) else None
        if not isinstance(support, list) or not support:
            raise InstanceFormatError(f"{where}.support: expected a non-empty list")
        pairs = []
        for j, atom in enumerate(support):
            aw = f"{where}.support[{j}]"
            if not isinstance(atom, dict) or "value" not in atom or "prob" not in atom:
                raise InstanceFormatError(f"{aw}: expected an object with value and prob")
            v = _number(atom["value"], aw + ".value")
            p = _number(atom["prob"], aw + ".prob")
            if not 0.0 < p <= 1.0:
                raise InstanceFormatError(f"{aw}.prob: must lie in (0, 1], got {p!r}")
            pairs.append((v, p))
        total = math.fsum(p for _, p in pairs)
        if abs(total - 1.0) > PROB_SUM_TOL:
            raise InstanceFormatError(f"{where}: probabilities sum to {total!r}, expected 1")
        if abs(total - 1.0) > 1e-12:
            # tolerated slack larger than the distribution's own check
            pairs = [(v, p / total) for v, p in pairs]
        dists.append(DiscreteDistribution(pairs))
    return Instance(tuple(dists), objective, name)


def save_instance(instance: Instance, path) -> None:
    Path(path).write_text(json.dumps(instance_to_dict(instance), indent=2) + "\n")


def load_instance(path) -> Instance:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceFormatError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    return instance_from_dict(doc)


GENERATORS = {
    "prophet_hard": (gen_prophet_hard, float),
    "075_hard": (gen_075_hard, float),
    "one_threshold_hard": (gen_one_threshold_hard, int),
    "min_iid_hard": (gen_min_iid_hard, int),
    "min_exchange_hard": (gen_min_exchange_hard, float),
}

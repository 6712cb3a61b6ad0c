import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from prophet_secretary.claims import random_instance, random_non_increasing  # noqa: E402
from prophet_secretary.distributions import DiscreteDistribution  # noqa: E402
from prophet_secretary.engine import Instance  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def make_instance():
    def build(*pairs_lists, objective="max"):
        return Instance(tuple(DiscreteDistribution(p) for p in pairs_lists), objective)

    return build


__all__ = ["random_instance", "random_non_increasing"]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)

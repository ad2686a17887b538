import numpy as np
import pytest
from hypothesis import settings

from rwast.distributions import IntervalBeta

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SHAPES = (0.5, 1.0, 1.5, 2.0, 3.5, 5.0)
SUPPORTS = ((0.0, 1.0), (-1.0, 1.0), (-2.0, 3.0))
ORDERS = (0.5, 1.0, 2.0, 3.5)

# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def grid_dists():
    return [IntervalBeta(p, q, a, b) for a, b in SUPPORTS for p in SHAPES for q in SHAPES]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

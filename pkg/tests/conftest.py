import math

import numpy as np
import pytest


def random_orthogonal(n, rng, rotations=None):
    """Product of random Givens plane rotations."""
    q = np.eye(n)
    for _ in range(rotations or 3 * n * n):
        i, j = rng.choice(n, size=2, replace=False)
        th = rng.uniform(0, 2 * math.pi)
        c, s = math.cos(th), math.sin(th)
        qi, qj = q[i].copy(), q[j].copy()
        q[i], q[j] = c * qi - s * qj, s * qi + c * qj
    return q


def random_spectrum_values(rng, n_low=2, n_high=64, low=-2.0, high=2.0):
    n = int(rng.integers(n_low, n_high + 1))
    return 10.0 ** rng.uniform(low, high, n)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

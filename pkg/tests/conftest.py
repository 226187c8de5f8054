import math

import numpy as np
import pytest

from thetaframe.lattice import Lattice2D


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_even_lattice(rng, n=None):
    """Random sheared lattice of density 2n with alpha in a moderate window."""
    if n is None:
        n = int(rng.integers(1, 3))
    alpha = float(rng.uniform(0.6, 1.7)) / math.sqrt(2 * n)
    beta = 1.0 / (2 * n * alpha)
    gamma = float(rng.uniform(0.0, beta / alpha))
    return Lattice2D.from_params(alpha, beta, gamma), n


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("[")[1].split("]")[0])):
            terminalreporter.write_line(line)

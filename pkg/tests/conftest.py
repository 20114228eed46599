import random

import pytest

from potentsplit.matrices import Matrix
from potentsplit.rings import integers_mod

# The 8x8 matrix over Z/4 from the worked example: companion blocks of
# x^3+x^2+1 and x^3, then two 1x1 zero blocks.
EXAMPLE_ROWS = [
    [0, 0, 1, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0],
]


def random_matrix(ring, n, rng):
    elems = ring.element_list()
    return Matrix(ring, [[rng.choice(elems) for _ in range(n)] for _ in range(n)])


@pytest.fixture
def rng():
    return random.Random(20261016)


@pytest.fixture
def example_matrix():
    return Matrix(integers_mod(4), EXAMPLE_ROWS)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.REPORT:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.REPORT):
            terminalreporter.write_line(line)

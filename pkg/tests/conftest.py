from fractions import Fraction

import pytest
from hypothesis import strategies as st

from orbitnf.corpus import random_pair
from orbitnf.pattern import validate_interlacing

WORKED_LAMBDA = (6, 6, 5, 3, 3, 2, 1, 0)
WORKED_MU = (6, 5, 4, 3, 3, 1, 1)


@pytest.fixture
def worked():
    return validate_interlacing(WORKED_LAMBDA, WORKED_MU)


@pytest.fixture
def lagrangian():
    # lambda_1 > lambda_2 > lambda_3 with mu = (lambda_2, lambda_2)
    return validate_interlacing([5, 2, -1], [2, 2])


@st.composite
def pairs(draw, max_n=8):
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(1, max_n))
    import random

    return random_pair(random.Random(seed), n)


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)


def F(*xs):
    return tuple(Fraction(x) for x in xs)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

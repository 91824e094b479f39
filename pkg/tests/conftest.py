import numpy as np
import pytest

from naimark.instances import example_e1, mercedes_benz

ACCEPTANCE_LINES = []


@pytest.fixture
def e1():
    return example_e1()


@pytest.fixture
def mb_unit():
    return mercedes_benz()


@pytest.fixture
def mb_parseval():
    return mercedes_benz(parseval=True)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

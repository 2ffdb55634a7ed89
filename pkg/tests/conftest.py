import numpy as np
import pytest

from framedrag import GridSpec, ModelParams


@pytest.fixture
def grid():
    return GridSpec.centered(256, 32.0)


@pytest.fixture
def params():
    return ModelParams(mass=1.0, D=0.1, hbar=1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import LINES
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)

import random

import pytest

from affectmidi import fixtures
from affectmidi.render import Session, SessionConfig

# verdict lines collected by the acceptance gate, echoed after the run
ACCEPTANCE_VERDICTS = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_VERDICTS:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def matrix():
    return fixtures.default_matrix()


@pytest.fixture(scope="session")
def motives():
    return fixtures.default_motives()


@pytest.fixture(scope="session")
def licks():
    return fixtures.default_licks()


@pytest.fixture(scope="session")
def registers():
    return fixtures.default_registers()


@pytest.fixture
def session():
    return Session(SessionConfig(seed=12345))


@pytest.fixture
def rng():
    return random.Random(987654321)

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from e8orbits.rootdata import named_datum  # noqa: E402


@pytest.fixture(scope="session")
def e8():
    return named_datum("E8")


@pytest.fixture(scope="session")
def f4():
    return named_datum("F4")


@pytest.fixture(scope="session")
def g2():
    return named_datum("G2")


@pytest.fixture(scope="session")
def small(request):
    return named_datum(request.param)


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)

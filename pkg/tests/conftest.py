import pytest

from almostded.ideals import IdealMap
from almostded.sets import Space

ACCEPTANCE_LINES = []


def chi(space, lo, hi, value=1, dmin=0, dmax=None):
    """value times the indicator of the cell (lo, hi] (lo=None: [0, hi])."""
    return IdealMap.indicator(space.cell(lo, hi, dmin, dmax), value)


def pt(space, x, value=1):
    return IdealMap.indicator(space.points([x]), value)


@pytest.fixture
def W():
    return Space("w")


@pytest.fixture
def W2():
    return Space("w^2")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

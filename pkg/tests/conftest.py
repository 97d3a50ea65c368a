"""Shared fixtures and the acceptance-summary hook."""

import sys

import pytest

from hyperheat import TorusGrid


def pytest_terminal_summary(terminalreporter):
    """Replay the one-line-per-criterion acceptance verdicts after the run."""
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "ACCEPTANCE_LINES", None) if mod else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture
def grid1d():
    return TorusGrid(1, 64)


@pytest.fixture
def grid1d_fine():
    return TorusGrid(1, 256)


@pytest.fixture
def grid2d():
    return TorusGrid(2, 32)

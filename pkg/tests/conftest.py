from __future__ import annotations

import pytest

from ncgcover import kgroup as kg
from ncgcover.voltage import lifted_group, ncg_cover

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def p7():
    return kg.KParams(7, 2)


@pytest.fixture(scope="session")
def cover7(p7):
    return ncg_cover(p7)


@pytest.fixture(scope="session")
def F7(cover7):
    return lifted_group(cover7)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

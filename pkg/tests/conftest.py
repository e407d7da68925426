import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from schreierlab.algebra import catalog  # noqa: E402
from schreierlab.sweep import all_points  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def monoids4():
    return catalog("monoid", 4)


@pytest.fixture(scope="session")
def monoids3():
    return catalog("monoid", 3)


@pytest.fixture(scope="session")
def magmas3():
    return catalog("unitary-magma", 3)


@pytest.fixture(scope="session")
def monoid_points4(monoids4):
    return all_points(monoids4)


@pytest.fixture(scope="session")
def monoid_points3(monoids3):
    return all_points(monoids3)


@pytest.fixture(scope="session")
def magma_points3(magmas3):
    return all_points(magmas3)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

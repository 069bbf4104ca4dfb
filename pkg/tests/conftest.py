import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from costmc.instances import builtin_fixture  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def suboptimal():
    return builtin_fixture("greedy-suboptimal")


@pytest.fixture
def optimal():
    return builtin_fixture("greedy-optimal")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

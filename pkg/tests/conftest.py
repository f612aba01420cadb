import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qlcm.progression import make_progression  # noqa: E402


@pytest.fixture
def mersenne():
    return make_progression(2, 1, 0)


@pytest.fixture
def base3():
    return make_progression(3, 1, 1)


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(id, ok, detail)``."""

    def record(cid, ok, detail=""):
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  C{cid}  {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

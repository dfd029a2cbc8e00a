import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_LINES = []


def record(criterion, status, detail=""):
    ACCEPTANCE_LINES.append(f"[{status}] {criterion}" + (f" -- {detail}" if detail else ""))


@pytest.fixture
def acceptance():
    return record


@pytest.fixture(scope="session")
def data_dir():
    """Directory holding real benchmark networks (``COMMAWARE_DATA``, default ``data/``)."""
    return Path(os.environ.get("COMMAWARE_DATA", Path(__file__).parent.parent / "data"))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from whystream.events import Record  # noqa: E402

ACCEPTANCE_LINES = []


def lifecycle_log():
    return [
        Record(id=i, action=a)
        for i, a in [(1, "a"), (2, "a"), (2, "b"), (1, "b"), (2, "c"), (2, "d")]
    ]


def ltl_log():
    return [Record(action=a, p=p) for a, p in [("b", 1), ("c", -2), ("a", 0), ("d", 0)]]


WINDOW_LOG = [3, 1, 4, 0, 5, 9, 2]


@pytest.fixture
def acceptance_report():
    def record(criterion, ok, detail=""):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

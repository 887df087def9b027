import sys
from pathlib import Path

import pytest

# lets test modules import the shared stationary-solution helper
sys.path.insert(0, str(Path(__file__).parent))

_CRITERIA = []


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(id, title, passed, detail)``."""

    def record(cid, title, passed, detail=""):
        _CRITERIA.append((cid, title, bool(passed), detail))
        return bool(passed)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for cid, title, passed, detail in sorted(_CRITERIA, key=lambda c: c[0]):
        line = f"{'PASS' if passed else 'FAIL'}  [{cid}] {title}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)

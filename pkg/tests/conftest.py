import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from boundwell.solver import SolverConfig  # noqa: E402

_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def cfg():
    return SolverConfig()


@pytest.fixture
def acceptance_report():
    """Record one PASS/FAIL line per acceptance criterion."""

    def report(label, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else "")
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

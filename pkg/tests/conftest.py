import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from frobroot.ringcore import RingContext  # noqa: E402

_acceptance = []


@pytest.fixture
def R2():
    return RingContext(2, ("x", "y", "z"))


@pytest.fixture
def R5():
    return RingContext(5, ("x", "y"))


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{mark}  {name}")

import numpy as np
import pytest

from opentsp.geometry import Instance

# (criterion, passed, detail) rows appended by test_acceptance.py
ACCEPTANCE_LINES = []


def random_instance(rng, n, size=1000.0, start=(500.0, 500.0)):
    return Instance.from_coords(start, (rng.random((n, 2)) * size).tolist())


@pytest.fixture
def tri():
    return Instance.from_coords((0, 0), [(1, 0), (2, 0), (-1.5, 0)])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_LINES:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")

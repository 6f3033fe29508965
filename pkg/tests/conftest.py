"""Shared fixtures, plus a terminal summary listing each acceptance criterion."""

import re

import pytest

from qgdcb.algebra import presentation
from qgdcb.cartan import build_cartan

_CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")
_outcomes = {}


@pytest.fixture(scope="session")
def a1():
    return presentation("A", 1, "Uhat")


@pytest.fixture(scope="session")
def a2():
    return presentation("A", 2, "Uhat")


@pytest.fixture(scope="session")
def a1_datum():
    return build_cartan("A", 1)


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if m is None:
        return
    key = (int(m.group(1)), m.group(2))
    if report.when == "call" or report.outcome != "passed":
        previous = _outcomes.get(key, "passed")
        _outcomes[key] = report.outcome if previous == "passed" else previous


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), outcome in sorted(_outcomes.items()):
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d} {mark}  {name.replace('_', ' ')}")

import sys

import pytest

from chowlakit import liouville_table
from chowlakit.experiments import Tables

BIG_LIMIT = 2 * 1024**2 + 3 * 1024


@pytest.fixture(scope="session")
def table():
    return liouville_table(BIG_LIMIT)


@pytest.fixture(scope="session")
def tables(table):
    return Tables(table)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: int(s.split()[2])):
        terminalreporter.write_line(line)

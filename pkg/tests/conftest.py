import sys
from functools import lru_cache

import pytest

from cmfamilies.bundles import available_groups
from cmfamilies.pipeline import load_group, load_table, run_group

ALL_GROUPS = available_groups()
EXCEPTIONAL = [g for g in ALL_GROUPS if g.startswith("G")]


@lru_cache(maxsize=None)
def group(name):
    return load_group(name)


@lru_cache(maxsize=None)
def table(name):
    return load_table(group(name))


@lru_cache(maxsize=None)
def result(name):
    return run_group(name, samples=0)


@pytest.fixture(params=ALL_GROUPS)
def any_group(request):
    return request.param


@pytest.fixture(params=EXCEPTIONAL)
def exceptional(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("tests.test_acceptance")
    lines = mod.summary_lines() if mod else []
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

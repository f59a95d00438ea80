import os
import sys

from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, print_blob=True)
settings.load_profile("default")

import time

import pytest

_criteria = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


@pytest.fixture
def criterion(request):
    """Times one acceptance criterion and records a pass/fail line."""
    marker = request.node.get_closest_marker("criterion")
    number, limit = marker.args
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {elapsed:7.2f}s (limit {limit}s)  {request.node.name}"
    _criteria.append((number, line))
    print("\n" + line)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, seconds): acceptance criterion with runtime limit")


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_criteria):
            terminalreporter.write_line(line)

import os
import random

import pytest

from numlog import corpus

ACCEPTANCE_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, summary): acceptance criterion check")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marks = getattr(report, "criterion", None)
    if marks is None:
        return
    number, summary = marks
    prev = ACCEPTANCE_RESULTS.get(number, (summary, True))
    ACCEPTANCE_RESULTS[number] = (summary, prev[1] and report.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        report.criterion = tuple(mark.args)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        summary, ok = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {summary}")


@pytest.fixture(scope="session")
def samples():
    return corpus.load_samples()


@pytest.fixture
def rng():
    return random.Random(int(os.environ.get("NUMLOG_TEST_SEED", "7")))

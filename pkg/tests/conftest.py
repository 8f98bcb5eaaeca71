import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from vdas.algebra import get_params  # noqa: E402
from vdas.core import Identity, StateInfo, register, setup  # noqa: E402


@pytest.fixture(scope="session")
def toy():
    return get_params("toy-64")


@pytest.fixture(scope="session")
def ss():
    return get_params("ss-512")


@pytest.fixture(scope="session")
def toy_system(toy):
    return setup(toy, b"fixture-kgc")


@pytest.fixture(scope="session")
def toy_terminals(toy_system):
    sysp, msk = toy_system
    return [register(sysp, msk, Identity(b"term-%d" % i), b"x-%d" % i) for i in range(12)]


@pytest.fixture
def delta():
    return StateInfo(b"round-delta")


# -- acceptance criteria summary ---------------------------------------------

_CRITERIA: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        verdict = "PASS" if rep.outcome == "passed" else "FAIL"
        if _CRITERIA.get(number, ("PASS",))[0] == "FAIL":
            verdict = "FAIL"  # a criterion split over several tests fails if any part fails
        _CRITERIA[number] = (verdict, title)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        verdict, title = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {verdict}  {title}")

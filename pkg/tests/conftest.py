from __future__ import annotations

import time

import pytest

from ppic_routes.mesh import MeshSpec
from ppic_routes.oracle import oracle_max_simultaneous_all, oracle_realizable_lengths, verify_theorem_suite

SQ23 = MeshSpec.parse("square:2x3")

# seconds spent building each session fixture, read by the acceptance suite
TIMINGS: dict[str, float] = {}
# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE: dict[int, str] = {}


def _timed(name, fn):
    t0 = time.perf_counter()
    out = fn()
    TIMINGS[name] = time.perf_counter() - t0
    return out


@pytest.fixture(scope="session")
def lengths_2x3():
    return _timed("lengths_2x3", lambda: oracle_realizable_lengths(SQ23, jobs=2))


@pytest.fixture(scope="session")
def maxy_2x3():
    return _timed("maxy_2x3", lambda: oracle_max_simultaneous_all(SQ23, jobs=2))


@pytest.fixture(scope="session")
def suite_2x3():
    return _timed("suite_2x3", lambda: verify_theorem_suite(SQ23, jobs=2))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])

import json
import time
from pathlib import Path

import pytest

DATA = Path(__file__).resolve().parent / "data"

# (number, title, passed, detail) appended by tests/test_acceptance.py
ACCEPTANCE = []
WALL_LIMIT_SECONDS = 30.0
_START = {}


def pytest_sessionstart(session):
    _START["t"] = time.perf_counter()


@pytest.fixture(scope="session")
def golden():
    """mpmath values at 50 digits; see tests/oracles/make_golden.py."""
    return json.loads((DATA / "golden.json").read_text())


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(ACCEPTANCE):
        mark = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{mark}] {number:2d}. {title}: {detail}")
    wall = time.perf_counter() - _START.get("t", time.perf_counter())
    mark = "PASS" if wall < WALL_LIMIT_SECONDS else "FAIL"
    terminalreporter.write_line(f"[{mark}] 11. full pytest wall time {wall:.1f} s (< {WALL_LIMIT_SECONDS:g} s)")

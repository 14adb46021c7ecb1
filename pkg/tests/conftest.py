"""Shared fixtures and the acceptance-criteria scoreboard hook."""

import json
from pathlib import Path

import pytest

ANCHORS_PATH = Path(__file__).parent / "oracles" / "anchors.json"

# One line per acceptance criterion, appended by test_acceptance.py and
# echoed after the run.  Printing happens in pytest_terminal_summary because
# the default fd-level capture swallows everything written during a passing
# test, including writes to sys.__stdout__.
ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def anchors():
    """Reference pressures frozen from the independent brute-force evaluation."""
    with open(ANCHORS_PATH, encoding="utf-8") as handle:
        return json.load(handle)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

"""Shared pytest plumbing: collects acceptance-criterion result lines and
echoes them in a dedicated section of the terminal summary so they are
visible whether or not output capture is on."""

import pytest

_ACCEPTANCE_LINES = []


@pytest.fixture
def criterion_line():
    """Return a callable that records one pass/fail line for a criterion."""

    def emit(line):
        _ACCEPTANCE_LINES.append(line)
        print(line)

    return emit


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

"""Shared pytest plumbing.

The acceptance tests each report a one-line PASS/FAIL summary; collect those
lines here and echo them after the run so they are visible even though pytest
captures per-test output.
"""

CRITERION_LINES = []


def pytest_terminal_summary(terminalreporter):
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in CRITERION_LINES:
            terminalreporter.write_line(line)

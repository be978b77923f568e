"""Shared pytest hooks: prints one PASS/FAIL line per acceptance test."""

from __future__ import annotations

_acceptance_outcomes: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.skipped):
        _acceptance_outcomes[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_outcomes:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for nodeid, outcome in sorted(_acceptance_outcomes.items()):
        name = nodeid.split("::")[-1]
        terminalreporter.write_line(f"{outcome.upper():>7}: {name}")

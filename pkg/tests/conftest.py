"""Shared pytest plumbing: replay acceptance announcements in the summary.

Passing tests have their stdout captured, so the per-criterion PASS/FAIL
lines printed by tests/test_acceptance.py would normally be invisible on a
green run. announce() also records each line here, and the terminal-summary
hook echoes them after the progress output.
"""

criterion_lines: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in criterion_lines:
            terminalreporter.write_line(line)

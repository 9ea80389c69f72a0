"""Terminal reporting for the acceptance gate.

test_acceptance registers one line per criterion; replaying them from the
summary hook keeps them visible under captured runs.
"""

GATE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if GATE_LINES:
        terminalreporter.section("acceptance gate")
        for line in GATE_LINES:
            terminalreporter.write_line(line)

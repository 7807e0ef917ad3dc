import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

# (criterion number, line) pairs filled in by test_acceptance
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

# acceptance lines collected by test_acceptance.report, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

EXAMPLE_9 = [0, 1, 6, 4, 3, 7, 8, 0, 4, 2, 5, 0, 3, 2, 1, 8, 5, 6, 7, 2, 1]


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)

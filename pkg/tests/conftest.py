import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from upperclust.cluster import exchange_polys  # noqa: E402
from upperclust.field import default_params  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def params():
    return default_params()


@pytest.fixture(scope="session")
def ex(params):
    return exchange_polys(params)


@pytest.fixture
def acceptance_log():
    def log(number, title, passed, detail=""):
        status = "PASS" if passed else "FAIL"
        line = f"[{status}] criterion {number}: {title}"
        if detail:
            line += f" -- {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return log


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

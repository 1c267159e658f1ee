import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from choiceaxioms.generators import fixtures  # noqa: E402


@pytest.fixture(scope="session")
def fx():
    return fixtures()


@pytest.fixture
def example1(fx):
    return fx["example1"].dataset


@pytest.fixture
def example2(fx):
    return fx["example2"].dataset


ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok, note = ACCEPTANCE[number]
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}"
        terminalreporter.write_line(line + (f"  ({note})" if note else ""))

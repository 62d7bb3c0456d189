import pytest

from ris_scope.core import RisGeometry

# (criterion number, passed, detail) rows collected by test_acceptance.py
ACCEPTANCE: list[tuple[int, bool, str]] = []


@pytest.fixture(scope="session")
def geom16():
    return RisGeometry.from_size(16, 10)


@pytest.fixture(scope="session")
def geom_sizes():
    return {n: RisGeometry.from_size(n, 10) for n in (8, 16, 32)}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")

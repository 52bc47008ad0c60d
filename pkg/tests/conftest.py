import pytest

from eideals.grammar import parse_epoly

XY = ("x", "y")


@pytest.fixture
def P():
    """Parse over (x, y)."""
    return lambda text, vars=XY: parse_epoly(text, vars)


# criterion number -> (passed, message); filled in by test_acceptance
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, msg = ACCEPTANCE[num]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {num}: {msg}")

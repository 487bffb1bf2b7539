"""Collects acceptance results and prints one PASS/FAIL line per criterion."""
import pytest

ACCEPTANCE: dict[int, tuple[str, float, str]] = {}


@pytest.fixture
def acceptance():
    return ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        status, elapsed, title = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {status} ({elapsed:.1f} s) {title}")

import pytest

from phaseint.oracle import exact_levels

# (criterion number, title, passed, detail) collected by test_acceptance.py
ACCEPTANCE_LINES = []

_LEVEL_CACHE = {}


def cached_levels(family, n_max=4):
    key = (family, n_max)
    if key not in _LEVEL_CACHE:
        _LEVEL_CACHE[key] = exact_levels(family, n_max)
    return _LEVEL_CACHE[key]


@pytest.fixture(scope="session")
def oracle_levels():
    return cached_levels


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, ok, detail in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(f"criterion {num} [{'PASS' if ok else 'FAIL'}] {title}: {detail}")

"""Collects one verdict line per acceptance criterion and prints them at the end of the run."""

import pytest

ACCEPTANCE_KEY = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_KEY] = {}


@pytest.fixture
def acceptance(request):
    """Return ``record(number, title, checks)`` where checks are (label, ok, detail)."""
    table = request.config.stash[ACCEPTANCE_KEY]

    def record(number, title, checks, info=()):
        ok = all(passed for _, passed, _ in checks)
        table[number] = (title, ok, list(checks), list(info))
        print(format_line(number, title, ok))
        return ok
    return record


def format_line(number, title, ok):
    return f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title}"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    table = config.stash.get(ACCEPTANCE_KEY, {})
    if not table:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(table):
        title, ok, checks, info = table[number]
        terminalreporter.write_line(format_line(number, title, ok))
        for label, passed, detail in checks:
            terminalreporter.write_line(f"      {'ok ' if passed else 'BAD'} {label}: {detail}")
        for line in info:
            terminalreporter.write_line(f"      info {line}")

import pytest

from clfilter.synthesis import FilterSpec, synthesize

_ACCEPTANCE = []


@pytest.fixture
def ref_spec():
    return FilterSpec(2e9, 0.1, 50.0)


@pytest.fixture
def ref_sections(ref_spec):
    return synthesize(ref_spec)


@pytest.fixture
def acceptance_log():
    """Record one pass/fail line per acceptance criterion."""

    def log(criterion, ok, detail):
        _ACCEPTANCE.append(f"{'PASS' if ok else 'FAIL'}  {criterion}: {detail}")
        return ok

    return log


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)

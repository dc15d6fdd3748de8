import pytest

from gammaprimes.arithmetic import build_table
from gammaprimes.zeros import bundled_zeros


@pytest.fixture(scope="session")
def table():
    return build_table(10**6)


@pytest.fixture(scope="session")
def small_table():
    return build_table(20_000)


@pytest.fixture(scope="session")
def zeros():
    return bundled_zeros()


def pytest_configure(config):
    config.acceptance_lines = []


@pytest.fixture
def record(request):
    """Record a one-line PASS/FAIL verdict, shown in the terminal summary."""
    lines = request.config.acceptance_lines

    def _record(label, passed, detail):
        line = f"{'PASS' if passed else 'FAIL'}  {label}: {detail}"
        lines.append(line)
        print(line)
        return passed

    return _record


def pytest_terminal_summary(terminalreporter, config):
    if config.acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in config.acceptance_lines:
            terminalreporter.write_line(line)

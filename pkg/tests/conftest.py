import pytest

from mollified_mobius.arith import build_tables


@pytest.fixture(scope="session")
def small_tables():
    return build_tables(10_000)


@pytest.fixture(scope="session")
def tables_1e5():
    return build_tables(100_000)


@pytest.fixture(scope="session")
def tables_1e6():
    return build_tables(1_000_000)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(module, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

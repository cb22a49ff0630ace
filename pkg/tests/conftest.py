import pytest

from tpalg import QQ, catalog_2d_transposed, truncated_polynomial_algebra

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def catalog():
    return {e.id: e for e in catalog_2d_transposed(verify=False)}


@pytest.fixture(scope="session")
def poly_xy():
    return truncated_polynomial_algebra(["x", "y"], [2, 2], QQ)


@pytest.fixture(scope="session")
def poly_xyz():
    return truncated_polynomial_algebra(["x", "y", "z"], [2, 2, 2], QQ)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

from __future__ import annotations

import pytest

from hkdensity.gradedring import polynomial_ring
from hkdensity.polynomial import Polynomial


@pytest.fixture(scope="session")
def plane():
    """k[x, y] with its maximal ideal."""
    return polynomial_ring(2)


@pytest.fixture(scope="session")
def fermat_quartic():
    """k[x, y, z]/(x^4 + y^4 + z^4) with the maximal ideal."""
    return polynomial_ring(3, relations=[Polynomial.parse("x^4 + y^4 + z^4")])


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

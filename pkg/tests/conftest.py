import math

import pytest

from mixedzmc.riemann import make_params

A_SPECIAL = (math.sqrt(3.0) - 1.0) / math.sqrt(2.0)


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running numerical checks")


@pytest.fixture(scope="session")
def p14():
    """Curve parameters with ``a^4 + a^-4 = 14``."""
    return make_params(A_SPECIAL)


@pytest.fixture(scope="session")
def p052():
    return make_params(0.52)


ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def record_criterion(number: int, passed: bool, detail: str) -> None:
    """Store and print the outcome of one acceptance criterion."""
    ACCEPTANCE_RESULTS[number] = (bool(passed), detail)
    print(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        passed, detail = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if passed else 'FAIL'}  {detail}")

import numpy as np
import pytest

from stablepairs.forms import build_x_pair
from stablepairs.verify import (
    binary_form,
    random_dense_poly,
    random_linear_factor_form,
    random_sl,
    rational_normal_curve,
)

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_RESULTS = []


def record_acceptance(number: int, title: str, passed: bool, detail: str = ""):
    ACCEPTANCE_RESULTS.append((number, title, passed, detail))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if passed else "FAIL"
        line = f"[{status}] criterion {number:2d}: {title}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def conic_curve():
    return rational_normal_curve(2)


@pytest.fixture(scope="session")
def cubic_curve():
    return rational_normal_curve(3)


@pytest.fixture(scope="session")
def conic_xpair(conic_curve):
    return build_x_pair(conic_curve, samples=200_000, seed=101)


@pytest.fixture(scope="session")
def cubic_xpair(cubic_curve):
    return build_x_pair(cubic_curve, samples=200_000, seed=102)


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


__all__ = [
    "binary_form",
    "random_dense_poly",
    "random_linear_factor_form",
    "random_sl",
    "rational_normal_curve",
    "record_acceptance",
]

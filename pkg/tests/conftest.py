import numpy as np
import pytest

from plasmode import PlasmaParams, derive, solve

P1 = dict(omega=0.5, eps=0.2, k=5.0, alpha_p=0.5)
GRID_OMEGA = np.linspace(0.3, 1.5, 5)
GRID_EPS = np.linspace(0.05, 0.5, 5)


@pytest.fixture(scope="session")
def p1():
    return PlasmaParams(**P1)


@pytest.fixture(scope="session")
def dc1(p1):
    return derive(p1)


@pytest.fixture(scope="session")
def co1(p1):
    return solve(p1)


@pytest.fixture(scope="session")
def co_specular():
    return solve(PlasmaParams(**{**P1, "alpha_p": 0.0}))


ACCEPTANCE = []


def report(n, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    ACCEPTANCE.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)

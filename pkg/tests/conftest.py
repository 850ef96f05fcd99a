import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from dyndeg.linalg import IntMatrix

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.load_profile("default")


def int_matrices(min_dim=1, max_dim=5, lo=-5, hi=5):
    return st.integers(min_dim, max_dim).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n
        ).map(IntMatrix)
    )


def random_unimodular(dim, rng, steps=12):
    """``(U, U^-1)`` built from random elementary row operations."""
    U = [[int(i == j) for j in range(dim)] for i in range(dim)]
    V = [row[:] for row in U]
    for _ in range(steps):
        i, j = rng.choice(dim, size=2, replace=False)
        c = int(rng.integers(-2, 3))
        # U <- E U with E = I + c e_ij ; V <- V E^-1
        for col in range(dim):
            U[i][col] += c * U[j][col]
        for row in range(dim):
            V[row][j] -= c * V[row][i]
    return IntMatrix(U), IntMatrix(V)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])

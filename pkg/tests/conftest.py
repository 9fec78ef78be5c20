import os

import numpy as np
import pytest
from hypothesis import strategies as st

from oa_replicator import BimatrixGame, OpenAccessParameters, ReducedConstants

SEED = int(os.environ.get("OA_REPLICATOR_SEED", "20070501"))

K_REF = ReducedConstants(1, 2, 2, 3)
P1 = OpenAccessParameters(R=10, r=2, I=5, iota=1, L=2, G=3, P=8)
GAME_P1 = BimatrixGame([[9, 11], [11, 3]], [[7, 5], [0, 15]])
COORDINATION = BimatrixGame([[2, 0], [0, 1]], [[2, 0], [0, 1]])


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


def random_valid_params(rng):
    """Draw parameters satisfying every constraint, including ``G + I > L/2``."""
    R = rng.uniform(1, 100)
    r = R * rng.uniform(0.01, 0.99)
    I = rng.uniform(1, 100)  # noqa: E741
    iota = min(I, r) * rng.uniform(0.01, 0.99)
    G = rng.uniform(0.1, 50)
    L = rng.uniform(0.05, 0.99) * min(50.0, 2 * (G + I))
    P = max(0.0, r - iota + L - G) + rng.uniform(0.1, 50)
    return OpenAccessParameters(R, r, I, iota, L, G, P)


def random_constants(rng, low=0.1, high=10.0):
    return ReducedConstants(*rng.uniform(low, high, size=4))


def random_state(rng, margin=1e-3):
    return tuple(rng.uniform(margin, 1 - margin, size=2))


positive = st.floats(min_value=0.05, max_value=20.0, allow_nan=False, allow_infinity=False)
interior = st.floats(min_value=1e-4, max_value=1 - 1e-4, allow_nan=False)


@st.composite
def valid_params(draw, derived=True):
    """Parameters passing :func:`validate`; with ``derived`` also ``G + I > L/2``."""
    frac = st.floats(min_value=0.01, max_value=0.99)
    R = draw(st.floats(min_value=1, max_value=100))
    r = R * draw(frac)
    I = draw(st.floats(min_value=1, max_value=100))  # noqa: E741
    iota = min(I, r) * draw(frac)
    G = draw(st.floats(min_value=0.1, max_value=50))
    if derived:
        L = draw(st.floats(min_value=0.05, max_value=0.99)) * min(50.0, 2 * (G + I))
    else:
        L = draw(st.floats(min_value=0.1, max_value=50))
    P = max(0.0, r - iota + L - G) + draw(st.floats(min_value=0.1, max_value=50))
    return OpenAccessParameters(R, r, I, iota, L, G, P)


@st.composite
def constants(draw):
    return ReducedConstants(*(draw(positive) for _ in range(4)))


# Acceptance criteria report one line each in the terminal summary.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

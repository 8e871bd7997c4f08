import numpy as np
import pytest
from hypothesis import strategies as st

from majlat import make_pmf

EX1_P = (0.6, 0.2, 0.2)
EX1_Q = (0.45, 0.4, 0.15)
EX2_P = (0.398886918, 0.370328848, 0.228811150, 0.001973084)
EX2_Q = (0.539996140, 0.229554617, 0.116684354, 0.113764889)


@st.composite
def pmfs(draw, min_size=1, max_size=8, size=None):
    """Ordered PMFs, including zero masses and near-point-masses."""
    n = size if size is not None else draw(st.integers(min_size, max_size))
    weights = draw(
        st.lists(
            st.one_of(st.just(0.0), st.floats(1e-3, 1.0), st.integers(1, 20).map(float)),
            min_size=n,
            max_size=n,
        )
    )
    if sum(weights) == 0:
        weights[0] = 1.0
    return make_pmf(weights, strict=False)


@pytest.fixture
def ex1():
    return make_pmf(EX1_P), make_pmf(EX1_Q)


@pytest.fixture
def ex2():
    return make_pmf(EX2_P), make_pmf(EX2_Q)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    if mod is not None and mod.LINES:
        terminalreporter.section("acceptance")
        for line in sorted(mod.LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)

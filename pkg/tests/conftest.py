
import numpy as np
import pytest
from hypothesis import settings, strategies as st

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def pure_maxima(rows):
    """Textbook double loop over distinct tuples; independent of the package."""
    pts = set(map(tuple, rows))
    return {p for p in pts
            if not any(all(a >= b for a, b in zip(q, p)) and q != p for q in pts)}


def pure_excl(rows, q):
    q = tuple(q)
    return any(all(a >= b for a, b in zip(p, q)) and tuple(p) != q for p in map(tuple, rows))


def grid_points(d, min_size=1, max_size=40, hi=5):
    """Point lists on a small integer grid, so ties and duplicates are common."""
    coord = st.integers(0, hi).map(float)
    return st.lists(st.tuples(*([coord] * d)), min_size=min_size, max_size=max_size)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

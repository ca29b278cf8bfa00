import numpy as np
import pytest
from scipy.spatial.distance import pdist

from pointint.config import build_configuration


def random_points(rng, m, d, box=2.0, min_sep=0.2):
    """Rejection-sample ``m`` points in ``[-box, box]^d`` with pairwise separation >= ``min_sep``."""
    while True:
        pts = rng.uniform(-box, box, size=(m, d))
        if m == 1 or pdist(pts).min() >= min_sep:
            return pts


def random_configuration(rng, d, m_max=5, **kw):
    m = int(rng.integers(1, m_max + 1))
    return build_configuration(d, random_points(rng, m, d, **kw))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def two_center_3d():
    return build_configuration(3, [[0, 0, 0], [1, 0, 0]])


@pytest.fixture
def two_center_2d():
    return build_configuration(2, [[0, 0], [1, 0]])


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)

import numpy as np
import pytest

from squaremap.core import MappingId, MappingKind
from squaremap.maps import every_mapping

# filled by test_acceptance.py, printed once at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)


def square_lattice(n, margin):
    g = np.linspace(-1.0 + margin, 1.0 - margin, n)
    g = 0.5 * (g - g[::-1])
    return np.meshgrid(g, g)


def disc_lattice(n, margin):
    x, y = square_lattice(n, margin)
    keep = np.hypot(x, y) <= 1.0 - margin
    return x[keep], y[keep]


ALL_MAPPINGS = every_mapping(0.5) + [
    MappingId(MappingKind.SQUELCHED_ELLIPTICAL_GRID, 1.0),
    MappingId(MappingKind.SQUELCHED_ELLIPTICAL_GRID, 1e-5),
]


@pytest.fixture(params=ALL_MAPPINGS, ids=str)
def any_mapping(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)

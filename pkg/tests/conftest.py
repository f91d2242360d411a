import sys

import numpy as np
import pytest

from maxwellqm.grid import make_grid
from maxwellqm.state import gaussian_packet


@pytest.fixture(scope="session")
def grid16():
    return make_grid(16, 4.0, True)


@pytest.fixture(scope="session")
def grid24():
    return make_grid(24, 5.0, True)


@pytest.fixture(scope="session")
def flat16():
    """Unshifted lattice containing k = 0 (plane waves on the axes)."""
    return make_grid(16, 4.0, False)


def packet(grid, lam=1, eps=1, alpha=0.0, direction=(0.5, 0.3, 0.8), frac=0.1, center=None):
    """Gaussian of width k_max/10 centred at |k0| = frac * k_max."""
    d = np.asarray(direction, float)
    k0 = frac * grid.k_max * d / np.linalg.norm(d)
    return gaussian_packet(grid, k0, 10.0 / grid.k_max, lam, eps, 1, alpha, center)


def random_transverse(grid, rng, eps=1, alpha=0.0, width=None):
    """Smooth random transverse state: a few Gaussians with random phases."""
    width = width or 10.0 / grid.k_max
    out = None
    for lam in (1, -1):
        for _ in range(2):
            k0 = rng.uniform(-0.15, 0.15, 3) * grid.k_max
            c = rng.normal() + 1j * rng.normal()
            centre = rng.uniform(-1, 1, 3)
            p = gaussian_packet(grid, k0, width, lam, eps, 1, alpha, centre) * c
            out = p if out is None else out + p
    return out


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])

"""Position operator on the momentum lattice.

Applied in the helicity representation the operator is an exact finite
difference on the scalar coefficients.  Built from Cartesian polarization
vectors it must also differentiate the frame, which is singular along the
south polar axis for ``m = 1``; eigenvectors spread over the whole lattice
therefore stop converging.
"""
import numpy as np

from maxwellqm.grid import make_grid
from maxwellqm.operators import (apply_position, eigen_residual, hermiticity_asymmetry,
                                 position_expectation)
from maxwellqm.state import gaussian_packet, localized_state


def cartesian_residual(state, y):
    xs = apply_position(state, check_support=False, representation="cartesian")
    num = sum(np.sum(np.abs(x.coeff(*k) - y[j] * state.coeff(*k)) ** 2)
              for j, x in enumerate(xs) for k in set(x.coeffs) | set(state.coeffs))
    return np.sqrt(num / np.sum(np.abs(state.coeff(1, 1)) ** 2))


print("n     helicity residual   Cartesian residual")
for n in (16, 32, 64):
    g = make_grid(n, 4.0)
    y = g.x_axis[[n // 2 + 1, n // 2, n // 2 - 1]]
    loc = localized_state(g, y)
    print(f"{n:3d}   {eigen_residual(loc, y):.3e}           {cartesian_residual(loc, y):.3e}")

# packets of width s = 2 need s dk well below 1 for accurate centres
g = make_grid(48, 5.0)
for alpha in (0.0, 0.5):
    k0 = (0.25, 0.15, 0.4)
    a = gaussian_packet(g, k0, 2.0, alpha=alpha, center=(0.2, -0.1, 0.3))
    b = gaussian_packet(g, (-0.1, 0.2, 0.45), 2.0, alpha=alpha)
    print(f"\nalpha={alpha}: Hermiticity asymmetry {hermiticity_asymmetry(a, b):.1e}")
    print(f"  <x> of a packet centred at (0.2, -0.1, 0.3): {np.round(position_expectation(a), 4)}")

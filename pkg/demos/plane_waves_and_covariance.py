"""Closed-form plane waves and the frame independence of the inner product."""
import numpy as np

from maxwellqm.covariance import Hyperplane, hyperplane_inner_product
from maxwellqm.grid import make_grid
from maxwellqm.state import circular_state, delta_profile, gaussian_packet
from maxwellqm.synthesis import electric_field, real_psi

g = make_grid(16, 4.0, offset=False)
q = np.array([0.0, 0.0, 3 * g.dk])
z = g.x_axis
for lam in (1, -1):
    s = circular_state(g, delta_profile(g, q), lam, normalizable=False)
    print(f"helicity {lam:+d}: E on the z axis at t = 0 and t = 0.5")
    for t in (0.0, 0.5):
        E = electric_field(s, t).real[:, g.n // 2, g.n // 2, :]
        angle = np.degrees(np.arctan2(E[1], E[0]))[g.n // 2 : g.n // 2 + 4]
        print(f"  t={t}: polarization angle along z = {np.round(angle, 1)}")
    psi = real_psi(s)[g.n // 2, g.n // 2, :]
    print(f"  psi / cos(q z) = {np.round(psi / np.cos(q[2] * z) * (2 * np.pi) ** 3, 12)[:4]}")

print("\nCovariant inner product on boosted hyperplanes")
g = make_grid(40, 12.0)
s1 = gaussian_packet(g, (0.0, 0.0, 5.0), 1.0)
s2 = gaussian_packet(g, (0.3, 0.0, 4.8), 1.0, center=(0.2, 0.0, 0.0))
for eta in (0.0, 0.15, 0.3):
    r = hyperplane_inner_product(s1, s2, Hyperplane.boosted(eta, extent=5.0, resolution=24))
    print(f"  eta={eta:.2f}: {r.value:.10f}  (t-plane {r.reference:.10f}, "
          f"deviation {r.relative_deviation:.1e}, {r.elapsed:.1f} s)")

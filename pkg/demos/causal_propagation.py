"""Real versus positive-frequency propagation of a localized photon.

A photon prepared at the origin with a Gaussian taper of length ``s`` spreads
onto the light-cone shell ``r = ct``.  The real amplitude stays on the shell;
the positive-frequency amplitude alone has power-law tails reaching outside it.
"""
import numpy as np

from maxwellqm.covariance import hegerfeldt_correlator, localized_propagation, smoothed_closed_form

s = 0.05
print("ct/s    shell fraction   out-of-shell (real)   out-of-shell (positive)   ratio")
for mult in (5, 10, 20, 40):
    real, plus, rep = localized_propagation((0, 0, 0), s, mult * s)
    print(f"{mult:4d}    {rep.shell_fraction:.10f}     {rep.out_of_shell_real:.2e}"
          f"              {rep.out_of_shell_positive:.2e}                  {rep.ratio:.1e}")

real, plus, _ = localized_propagation((0, 0, 0), s, 20 * s)
exact = smoothed_closed_form(real.radii, 20 * s, s)
print(f"\nmax deviation from the closed form at ct = 20 s: "
      f"{np.max(np.abs(real.values.real - exact)) / np.max(np.abs(exact)):.1e}")

# far outside the shell the real amplitude vanishes and the positive part does not
far = real.radii > 20 * s + 10 * s
print(f"beyond the shell: max |psi_real| = {np.max(np.abs(real.values[far])):.1e}, "
      f"max |psi_+| = {np.max(np.abs(plus.values[far])):.1e}")

# the t = 0 correlator: the imaginary part cancels identically
radii = np.linspace(0.06, 3.0, 50)
p0, _ = hegerfeldt_correlator(0.0, radii, 64.0)
p1, _ = hegerfeldt_correlator(0.5, radii, 64.0, smoothing=6 / 64)
print(f"\nI+(t=0): max|Im|/max|Re| = {np.max(np.abs(p0.values.imag)) / np.max(np.abs(p0.values.real)):.1e}")
print(f"I+(ct=0.5), tapered: max|Im| outside r > 1 is "
      f"{np.max(np.abs(p1.values.imag[radii > 1])):.2e}")

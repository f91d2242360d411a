"""Off-lattice evaluation, hyperplane products and radial propagation profiles.

Events are ``(t, x, y, z)`` with ``t`` a time.  Four-vectors handed to the
hyperplane code use ``(ct, x, y, z)`` so that every component is a length.
"""
from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy import integrate

from .products import field_product
from .state import SIGNS, PhotonState

#: complex entries per phase block (about 64 MB)
_BLOCK = 4_000_000
#: nodes below this fraction of the peak amplitude are skipped in hyperplane sums
PRUNE_TOL = 1e-14


# -- direct sums ---------------------------------------------------------------------

@dataclass(frozen=True)
class EventValue:
    """Fields at a single event from the direct sum over lattice nodes.

    ``A`` is the complex four-potential, ``dA[mu]`` its derivative
    ``d_mu = d/dx^mu`` (``mu = 0`` is ``d/d(ct)``) and ``psi`` maps ``(lam, eps)`` to
    the amplitude of that sector.
    """

    event: tuple
    A: np.ndarray
    dA: np.ndarray
    psi: dict

    @property
    def E(self) -> np.ndarray:
        # E = -dA/dt = -c dA/d(ct)
        return -self._c * self.dA[0, 1:]

    _c: float = 1.0


def _sector_vectors(state: PhotonState, eps: int, prune: float = 0.0):
    """Nodes carrying ``eps`` content: ``k (N,3)``, ``|k| (N,)``, ``V (N,4)``.

    Nodes whose amplitude is at most ``prune`` times the peak are dropped.
    """
    V = state.vector_coeffs(eps)
    g = state.grid
    size = np.max(np.abs(V), axis=0)
    mask = size > prune * size.max() if size.max() > 0 else size > 0
    return g.kvec[:, mask].T, g.kmag[mask], V[:, mask].T


def _phases(points, k, kmag, eps, c):
    """``exp(-i eps (omega t - k.x))`` for events ``(M,4)`` and nodes ``(N,)``."""
    arg = np.outer(points[:, 0] * c, kmag) - points[:, 1:] @ k.T
    return np.exp(-1j * eps * arg)


def _direct_potential(state: PhotonState, points, normal=None, prune: float = 0.0):
    """``A`` (M,4) and, if ``normal`` is given, ``n^mu d_mu A`` (M,4), summed over ``eps``.

    Also returns the conjugate field ``A_c = sum eps A^eps`` and its derivative.
    """
    g = state.grid
    c = g.constants.c
    pref = 1j * g.constants.field_prefactor * g.k_weight
    M = points.shape[0]
    A = np.zeros((M, 4), complex)
    Ac = np.zeros((M, 4), complex)
    dA = np.zeros((M, 4), complex)
    dAc = np.zeros((M, 4), complex)
    for eps in SIGNS:
        if not any(e == eps for (_, e) in state.coeffs):
            continue
        k, kmag, V = _sector_vectors(state, eps, prune)
        if kmag.size == 0:
            continue
        chunk = max(1, _BLOCK // kmag.size)
        if np.any(kmag == 0):
            raise ValueError("invariant-measure sum needs omega > 0 at every occupied node")
        W = pref * V / (2 * c * kmag)[:, None]
        if normal is not None:
            # n^mu d_mu on a mode is -i eps (n^0 |k| - n.k)
            nk = normal[0] * kmag - k @ normal[1:]
            WD = (-1j * eps * nk)[:, None] * W
        for lo in range(0, M, chunk):
            sl = slice(lo, lo + chunk)
            ph = _phases(points[sl], k, kmag, eps, c)
            a = ph @ W
            A[sl] += a
            Ac[sl] += eps * a
            if normal is not None:
                d = ph @ WD
                dA[sl] += d
                dAc[sl] += eps * d
    return A, Ac, dA, dAc


def evaluate_at_event(state: PhotonState, event) -> EventValue:
    """Direct sum of the potential, its gradient and every ``psi`` at one event.

    Works at any real event; on the dual lattice it reproduces the FFT synthesis.
    """
    g = state.grid
    c = g.constants.c
    ev = np.asarray(event, dtype=float).reshape(1, 4)
    A = np.zeros(4, complex)
    dA = np.zeros((4, 4), complex)
    for mu in range(4):
        normal = np.zeros(4)
        normal[mu] = 1.0
        a, _, d, _ = _direct_potential(state, ev, normal)
        A = a[0]
        dA[mu] = d[0]
    psi = {}
    for (lam, eps), coeff in state.sectors():
        mask = coeff != 0
        k = g.kvec[:, mask].T
        kmag = g.kmag[mask]
        ph = _phases(ev, k, kmag, eps, c)[0]
        psi[(lam, eps)] = complex(np.sum(ph * coeff[mask]) * g.k_weight)
    return EventValue(tuple(float(v) for v in ev[0]), A, dA, psi, c)


# -- hyperplane products -------------------------------------------------------------

class WindowError(ValueError):
    """Integration window cuts into the packets; ``tail_mass`` records by how much."""

    def __init__(self, tail_mass: float, threshold: float):
        super().__init__(f"integration window too small: boundary tail mass "
                         f"{tail_mass:.3e} exceeds {threshold:.1e}")
        self.tail_mass = tail_mass
        self.threshold = threshold


@dataclass(frozen=True)
class Hyperplane:
    """Flat spacelike hypersurface through ``origin`` with unit timelike ``normal``.

    ``normal`` and ``origin`` are ``(ct, x, y, z)``.  The quadrature mesh covers
    ``[-extent, extent]^3`` in the plane's own orthonormal coordinates.
    """

    normal: tuple
    origin: tuple = (0.0, 0.0, 0.0, 0.0)
    extent: float = 10.0
    resolution: int = 24

    def __post_init__(self):
        n = np.asarray(self.normal, dtype=float)
        if n.shape != (4,):
            raise ValueError("normal must be a four-vector")
        if n[0] <= 0 or abs(n[0] ** 2 - n[1:] @ n[1:] - 1) > 1e-12:
            raise ValueError("normal must be future-pointing with n.n = 1")
        if not self.extent > 0 or int(self.resolution) < 2:
            raise ValueError("extent must be positive and resolution >= 2")

    @classmethod
    def boosted(cls, rapidity: float, axis: int = 3, **kw) -> "Hyperplane":
        """Plane orthogonal to ``(cosh eta, sinh eta e_axis)``."""
        n = np.zeros(4)
        n[0] = np.cosh(rapidity)
        n[axis] = np.sinh(rapidity)
        return cls(tuple(n), **kw)

    @property
    def rapidity(self) -> float:
        return float(np.arccosh(self.normal[0]))

    def basis(self) -> np.ndarray:
        """Spatial orthonormal tangent vectors ``b_i`` (rows), ``b_i.b_j = -delta_ij``.

        These are the spatial columns of the pure boost taking ``e_0`` to ``n``.
        """
        n = np.asarray(self.normal, dtype=float)
        b = np.zeros((3, 4))
        for i in range(3):
            b[i, 0] = n[1 + i]
            b[i, 1:] = n[1 + i] * n[1:] / (1 + n[0])
            b[i, 1 + i] += 1.0
        return b

    def mesh(self):
        """Midpoint nodes as ``(ct, x, y, z)`` rows and the cell volume."""
        h = 2 * self.extent / self.resolution
        xi = -self.extent + h * (np.arange(self.resolution) + 0.5)
        grid = np.stack(np.meshgrid(xi, xi, xi, indexing="ij"), axis=-1).reshape(-1, 3)
        pts = np.asarray(self.origin, dtype=float) + grid @ self.basis()
        return pts, h**3


@dataclass(frozen=True)
class HyperplaneResult:
    value: complex
    reference: complex
    tail_mass: float
    rapidity: float
    resolution: int
    extent: float
    elapsed: float

    @property
    def relative_deviation(self) -> float:
        return abs(self.value - self.reference) / abs(self.reference)

    def to_json(self) -> dict:
        return {"value_re": self.value.real, "value_im": self.value.imag,
                "reference_re": self.reference.real, "reference_im": self.reference.imag,
                "relative_deviation": self.relative_deviation, "tail_mass": self.tail_mass,
                "rapidity": self.rapidity, "resolution": self.resolution,
                "extent": self.extent, "elapsed_s": self.elapsed}


def _plane_potential(state: PhotonState, plane: Hyperplane, prune: float):
    """:func:`_direct_potential` on the plane mesh using separable phases.

    With ``x = o + xi_a b_a`` the mode phase factorizes into one factor per
    plane axis, so only ``3 * resolution`` exponentials per node are needed.
    """
    g = state.grid
    c = g.constants.c
    r = plane.resolution
    n = np.asarray(plane.normal, dtype=float)
    o = np.asarray(plane.origin, dtype=float)
    b = plane.basis()
    h = 2 * plane.extent / r
    xi = -plane.extent + h * (np.arange(r) + 0.5)
    pref = 1j * g.constants.field_prefactor * g.k_weight
    out = [np.zeros((r, r, r, 4), complex) for _ in range(4)]
    for eps in SIGNS:
        if not any(e == eps for (_, e) in state.coeffs):
            continue
        k, kmag, V = _sector_vectors(state, eps, prune)
        if kmag.size == 0:
            continue
        if np.any(kmag == 0):
            raise ValueError("invariant-measure sum needs omega > 0 at every occupied node")

        def kdot(x):
            # k_mu x^mu with k^0 = |k|
            return kmag * x[0] - k @ x[1:]

        W = pref * V / (2 * c * kmag)[:, None] * np.exp(-1j * eps * kdot(o))[:, None]
        WD = (-1j * eps * kdot(n))[:, None] * W
        E = [np.exp(-1j * eps * np.outer(xi, kdot(b[a]))) for a in range(3)]
        both = np.concatenate([W, WD], axis=1)
        for i in range(r):
            Ti = E[0][i][:, None] * both
            for j in range(r):
                blk = E[2] @ (E[1][j][:, None] * Ti)
                out[0][i, j] += blk[:, :4]
                out[1][i, j] += eps * blk[:, :4]
                out[2][i, j] += blk[:, 4:]
                out[3][i, j] += eps * blk[:, 4:]
    return tuple(x.reshape(-1, 4) for x in out)


def _minkowski(a, b):
    return a[..., 0] * b[..., 0] - np.sum(a[..., 1:] * b[..., 1:], axis=-1)


def _boundary_fraction(density, resolution):
    d = np.abs(density).reshape((resolution,) * 3)
    inner = d[1:-1, 1:-1, 1:-1].sum()
    total = d.sum()
    return float((total - inner) / total) if total else 0.0


def hyperplane_inner_product(s1: PhotonState, s2: PhotonState, plane: Hyperplane,
                             tail_tol: float = 1e-6,
                             prune: float = PRUNE_TOL) -> HyperplaneResult:
    """``int dsigma n_mu J^mu[s1, s2]`` by midpoint quadrature on ``plane``.

    The bilinear current is ``-i g (A1*_nu d^mu Ac2^nu - Ac2^nu d^mu A1*_nu)``
    with ``g = eps0 c / hbar``.  Fields and their normal derivatives come from
    the exact direct sum over modes.  The reference is the k-space value of
    the same form on the ``t = const`` plane.

    Raises
    ------
    WindowError
        If the share of ``|integrand|`` on the outermost mesh layer exceeds
        ``tail_tol``.
    """
    if s1.grid != s2.grid:
        raise ValueError("states live on different grids")
    t0 = time.perf_counter()
    _, dvol = plane.mesh()
    A1, _, dA1, _ = _plane_potential(s1, plane, prune)
    _, Ac2, _, dAc2 = _plane_potential(s2, plane, prune)
    gc = s1.grid.constants.current_prefactor
    dens = -1j * gc * (_minkowski(np.conj(A1), dAc2) - _minkowski(Ac2, np.conj(dA1)))
    tail = _boundary_fraction(dens, plane.resolution)
    if tail > tail_tol:
        raise WindowError(tail, tail_tol)
    value = complex(np.sum(dens) * dvol)
    ref = complex(field_product(s1, s2).value)
    return HyperplaneResult(value, ref, tail, plane.rapidity, plane.resolution,
                            plane.extent, time.perf_counter() - t0)


# -- radial profiles -----------------------------------------------------------------

@dataclass(frozen=True)
class RadialProfile:
    """Complex values on increasing radii at time ``t`` with band limit ``cutoff``."""

    radii: np.ndarray
    values: np.ndarray
    t: float
    cutoff: float
    smoothing: float | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        r = np.asarray(self.radii, dtype=float)
        if r.ndim != 1 or np.any(np.diff(r) <= 0):
            raise ValueError("radii must be strictly increasing")
        if np.any(r <= 0):
            raise ValueError("radii must be positive")

    def to_csv(self, path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["r", "re", "im"])
            for r, v in zip(self.radii, np.asarray(self.values, complex)):
                w.writerow([repr(float(r)), repr(float(v.real)), repr(float(v.imag))])
        return path


def _radial_integrals(a, K, smoothing):
    """``S(a) = int_0^K k f(k) sin(a k) dk`` and ``C(a)`` likewise with cosine.

    ``f = exp(-k^2 s^2/2)`` when ``smoothing`` is set, else 1.
    """
    a = np.asarray(a, dtype=float)

    def integrand(k):
        f = k if smoothing is None else k * np.exp(-0.5 * (k * smoothing) ** 2)
        return np.concatenate([f * np.sin(a * k), f * np.cos(a * k)])

    # enough subintervals for the fastest oscillation present
    limit = max(200, int(np.max(np.abs(a), initial=0.0) * K / np.pi) * 4 + 50)
    out, _ = integrate.quad_vec(integrand, 0.0, K, epsabs=1e-13, epsrel=1e-12,
                                limit=limit, norm="max")
    return out[:a.size], out[a.size:]


def hegerfeldt_correlator(t: float, radii, K: float, c: float = 1.0,
                          smoothing: float | None = None):
    """Positive-frequency correlator and its real total on ``radii``.

    ``I+(t, r) = int_0^K k sin(kr) exp(-ikct) dk / ((2 pi)^2 r)`` is split as

    ``[S(r+ct) + S(r-ct) - i (C(r-ct) - C(r+ct))] / (2 (2 pi)^2 r)``

    which keeps the two principal-value pieces of the imaginary part explicit;
    they cancel identically at ``t = 0``.  The real total adds the
    negative-frequency term, ``I+ + (I+)* = 2 Re I+``.

    Returns
    -------
    (RadialProfile, RadialProfile)
        Positive-frequency part and real total.
    """
    if not K > 0:
        raise ValueError("band limit K must be positive")
    r = np.asarray(radii, dtype=float)
    if np.any(r <= 0):
        raise ValueError("radii must be positive")
    ct = c * t
    S, C = _radial_integrals(np.concatenate([r + ct, r - ct]), K, smoothing)
    m = r.size
    pref = 1.0 / (2 * (2 * np.pi) ** 2 * r)
    re = pref * (S[:m] + S[m:])
    im = -pref * (C[m:] - C[:m])
    plus = re + 1j * im
    meta = {"K": K, "c": c}
    return (RadialProfile(r, plus, t, K, smoothing, dict(meta, part="positive")),
            RadialProfile(r, (2 * re).astype(complex), t, K, smoothing, dict(meta, part="total")))


@dataclass(frozen=True)
class ShellReport:
    """Radial mass bookkeeping around the light-cone shell ``r = c|t|``."""

    shell_fraction: float
    out_of_shell_real: float
    out_of_shell_positive: float
    shell_halfwidth: float

    @property
    def ratio(self) -> float:
        if self.out_of_shell_real == 0:
            return float("inf")
        return self.out_of_shell_positive / self.out_of_shell_real

    def to_json(self) -> dict:
        return {"shell_fraction": self.shell_fraction,
                "out_of_shell_real": self.out_of_shell_real,
                "out_of_shell_positive": self.out_of_shell_positive,
                "positive_to_real_ratio": self.ratio,
                "shell_halfwidth": self.shell_halfwidth}


def _default_radii(ct, s, reach=40.0, per_s=20):
    r_max = abs(ct) + reach * s
    npts = int(np.ceil(r_max / s * per_s))
    return (np.arange(npts) + 0.5) * (r_max / npts)


def localized_propagation(y, s: float, t: float, K: float | None = None, c: float = 1.0,
                          radii=None):
    """Radial profile of the real amplitude of a smoothed localized state.

    The state is ``c(k) = exp(-k^2 s^2/2) exp(-i k.y)``; the profile is taken
    about ``y`` and does not depend on it otherwise.

    Parameters
    ----------
    s : float
        Smoothing length; must exceed the resolution ``2 pi / K``.
    K : float, optional
        Band limit, default ``12/s`` where the Gaussian is ``e^-72``.

    Returns
    -------
    (RadialProfile, RadialProfile, ShellReport)
        Real amplitude, positive-frequency amplitude and the shell bookkeeping.
    """
    if not s > 0:
        raise ValueError("smoothing length must be positive")
    if K is None:
        K = 12.0 / s
    if not s > 2 * np.pi / K:
        raise ValueError(f"smoothing s={s} is under-resolved by band limit K={K} "
                         f"(need s > {2 * np.pi / K:.3g})")
    if radii is None:
        radii = _default_radii(c * t, s)
    plus, total = hegerfeldt_correlator(t, radii, K, c, smoothing=s)
    # the normalised amplitude is 2 I+; its real part is the real total
    psi_plus = RadialProfile(plus.radii, 2 * plus.values, t, K, s,
                             {"part": "positive", "y": list(map(float, y))})
    psi_real = RadialProfile(total.radii, total.values, t, K, s,
                             {"part": "real", "y": list(map(float, y))})
    report = shell_report(psi_real, psi_plus, c * abs(t), 5 * s)
    return psi_real, psi_plus, report


def shell_report(real: RadialProfile, positive: RadialProfile, shell_radius: float,
                 halfwidth: float) -> ShellReport:
    """Shares of ``int |psi|^2 r^2 dr`` inside and outside ``|r - shell| < halfwidth``."""
    r = real.radii
    inside = np.abs(r - shell_radius) < halfwidth
    w_real = np.abs(real.values) ** 2 * r**2
    w_pos = np.abs(positive.values) ** 2 * r**2
    tot_real = integrate.trapezoid(w_real, r)
    tot_pos = integrate.trapezoid(w_pos, r)
    out_real = integrate.trapezoid(np.where(inside, 0.0, w_real), r)
    out_pos = integrate.trapezoid(np.where(inside, 0.0, w_pos), r)
    return ShellReport(float(1 - out_real / tot_real), float(out_real / tot_real),
                       float(out_pos / tot_pos), float(halfwidth))


def smoothed_closed_form(radii, t, s, c=1.0):
    """Exact real amplitude for the Gaussian-smoothed localized state (no band limit)."""
    r = np.asarray(radii, dtype=float)
    ct = c * t

    def G(a):
        return np.sqrt(np.pi / 2) * a / s**3 * np.exp(-a**2 / (2 * s**2))

    return (G(r + ct) + G(r - ct)) / (4 * np.pi**2 * r)


def write_json(path, payload) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True))
    return path


__all__ = [
    "EventValue", "evaluate_at_event", "Hyperplane", "HyperplaneResult", "WindowError",
    "hyperplane_inner_product", "RadialProfile", "hegerfeldt_correlator",
    "localized_propagation", "ShellReport", "shell_report", "smoothed_closed_form",
    "write_json",
]

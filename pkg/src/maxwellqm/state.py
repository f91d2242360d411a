"""Photon states as mode- and frequency-resolved coefficient functions.

A :class:`PhotonState` holds ``c[(mode, eps)]`` arrays on a :class:`KGrid`.  The
Cartesian polarization is never stored; it is supplied by the frame of index
``m`` when fields are synthesized.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .grid import KGrid, x_to_k
from .polarization import MODES, TRANSVERSE, frame_vectors

SIGNS = (1, -1)
ALPHAS = (0.0, 0.5)

#: packet amplitude allowed on the outermost lattice shell
BOUNDARY_TOL = 1e-8


class NonNormalizableError(ValueError):
    """The state has no finite norm (plane waves, position eigenvectors, zero)."""


def _key(mode, eps):
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if eps not in SIGNS:
        raise ValueError("eps must be +1 or -1")
    return (int(mode), int(eps))


@dataclass(frozen=True, eq=False)
class PhotonState:
    """Coefficients ``c_mode^eps(k)``; missing sectors are identically zero.

    ``alpha`` selects the normalization family (0 invariant, 1/2 Newton-Wigner),
    ``m`` the transverse frame.  ``real_field`` marks states whose negative
    frequency part is the conjugate of the positive one (so only ``eps=+1`` is
    stored) and ``lorenz`` marks ``c_0 = c_3``.
    """

    grid: KGrid
    coeffs: dict = field(default_factory=dict)
    alpha: float = 0.0
    m: int = 1
    real_field: bool = False
    lorenz: bool = False
    normalizable: bool = True

    def __post_init__(self):
        if self.alpha not in ALPHAS:
            raise ValueError("alpha must be 0 or 1/2")
        clean = {}
        for (mode, eps), arr in self.coeffs.items():
            arr = np.array(arr, dtype=complex)
            if arr.shape != self.grid.shape:
                raise ValueError(f"sector {(mode, eps)} has shape {arr.shape}, "
                                 f"grid is {self.grid.shape}")
            arr.setflags(write=False)
            clean[_key(mode, eps)] = arr
        object.__setattr__(self, "coeffs", clean)
        if self.real_field and any(np.any(a != 0) for (_, e), a in clean.items() if e == -1):
            raise ValueError("real-field states carry no independent eps=-1 content")
        if self.lorenz:
            for eps in SIGNS:
                if not np.array_equal(self.coeff(0, eps), self.coeff(3, eps)):
                    raise ValueError("Lorenz-flagged state needs c_0 = c_3")

    # -- access -------------------------------------------------------------
    def coeff(self, mode: int, eps: int) -> np.ndarray:
        arr = self.coeffs.get(_key(mode, eps))
        if arr is None:
            arr = np.zeros(self.grid.shape, complex)
            arr.setflags(write=False)
        return arr

    def sectors(self):
        """Stored ``((mode, eps), array)`` pairs in a fixed order."""
        return [(k, self.coeffs[k]) for k in sorted(self.coeffs, key=_sector_order)]

    @property
    def is_zero(self) -> bool:
        return all(not np.any(a) for a in self.coeffs.values())

    @property
    def is_transverse(self) -> bool:
        return all(mode in TRANSVERSE or not np.any(a)
                   for (mode, _), a in self.coeffs.items())

    def with_coeffs(self, coeffs: dict, **changes) -> "PhotonState":
        return replace(self, coeffs=coeffs, **changes)

    def map(self, fn, **changes) -> "PhotonState":
        """Apply ``fn(array, mode, eps)`` to every stored sector."""
        return self.with_coeffs({k: fn(a, *k) for k, a in self.coeffs.items()}, **changes)

    def frame(self, allow_zero: bool = False) -> dict:
        return frame_vectors(self.grid.kvec, self.m, allow_zero=allow_zero)

    def vector_coeffs(self, eps: int, modes=MODES, allow_zero: bool = False) -> np.ndarray:
        """Four-vector amplitude ``sum_mode c_mode^eps e_mode`` per node, shape ``(4, n, n, n)``."""
        fr = self.frame(allow_zero)
        out = np.zeros((4,) + self.grid.shape, complex)
        for mode in modes:
            c = self.coeffs.get((mode, eps))
            if c is not None:
                out += c * fr[mode]
        return out

    # -- arithmetic ---------------------------------------------------------
    def _compatible(self, other):
        if not isinstance(other, PhotonState):
            return NotImplemented
        if other.grid != self.grid or other.alpha != self.alpha or other.m != self.m:
            raise ValueError("states live on different grids or conventions")
        return True

    def __add__(self, other):
        if self._compatible(other) is NotImplemented:
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        coeffs = {k: self.coeff(*k) + other.coeff(*k) for k in keys}
        return PhotonState(self.grid, coeffs, self.alpha, self.m,
                           real_field=self.real_field and other.real_field,
                           lorenz=self.lorenz and other.lorenz,
                           normalizable=self.normalizable and other.normalizable)

    def __mul__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        return self.map(lambda a, *_: a * scalar)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)


def _sector_order(key):
    mode, eps = key
    return (MODES.index(mode), -eps)


def zero_state(grid: KGrid, alpha: float = 0.0, m: int = 1) -> PhotonState:
    return PhotonState(grid, {}, alpha, m)


def _mode_sign(lam, eps):
    _key(lam, eps)
    return int(lam), int(eps)


# -- constructors ---------------------------------------------------------------

def plane_wave(grid: KGrid, q, lam: int, eps: int = 1, amp: complex = 1.0,
               m: int = 1) -> PhotonState:
    """Discrete momentum eigenstate ``amp (2pi)^3 2 omega_q delta_grid(k - q)``.

    ``delta_grid`` is ``1/dk^3`` at the node ``q`` and zero elsewhere.
    """
    lam, eps = _mode_sign(lam, eps)
    idx = grid.node_index(q)
    w = float(grid.omega[idx])
    c = np.zeros(grid.shape, complex)
    c[idx] = amp * (2 * np.pi) ** 3 * 2 * w / grid.dk**3
    return PhotonState(grid, {(lam, eps): c}, 0.0, m, normalizable=False)


def _boundary_mass(c):
    edge = np.zeros(c.shape, bool)
    for ax in range(3):
        sl = [slice(None)] * 3
        sl[ax] = 0
        edge[tuple(sl)] = True
        sl[ax] = -1
        edge[tuple(sl)] = True
    peak = np.max(np.abs(c))
    return float(np.max(np.abs(c[edge])) / peak) if peak > 0 else 0.0


def gaussian_profile(grid: KGrid, k0, s: float, center=None) -> np.ndarray:
    """Unnormalized ``exp(-|k - k0|^2 s^2 / 2) exp(-i k.center)``."""
    k0 = np.asarray(k0, dtype=float).reshape(3, 1, 1, 1)
    prof = np.exp(-np.sum((grid.kvec - k0) ** 2, axis=0) * s**2 / 2).astype(complex)
    if center is not None:
        d = np.asarray(center, dtype=float)
        prof = prof * np.exp(-1j * np.einsum("i...,i->...", grid.kvec, d))
    return prof


def gaussian_packet(grid: KGrid, k0, s: float, lam: int = 1, eps: int = 1, m: int = 1,
                    alpha: float = 0.0, center=None) -> PhotonState:
    """Unit-norm Gaussian packet in a single ``(lam, eps)`` sector.

    The norm is taken in the product matching ``alpha``.  ``center`` shifts the
    packet in position space by multiplying with ``exp(-i k.center)``.
    """
    lam, eps = _mode_sign(lam, eps)
    prof = gaussian_profile(grid, k0, s, center)
    if _boundary_mass(prof) >= BOUNDARY_TOL:
        raise ValueError("packet is not contained in the lattice: amplitude on the "
                         f"outer shell is {_boundary_mass(prof):.2e} of peak")
    norm2 = np.sum(np.abs(prof) ** 2 * _alpha_weight(grid, alpha)) * grid.k_weight
    if lam == 0:
        norm2 = -norm2
    if norm2 <= 0:
        raise ValueError("scalar-mode packets have negative squared norm and are "
                         "not normalized")
    return PhotonState(grid, {(lam, eps): prof / np.sqrt(norm2)}, alpha, m)


def _alpha_weight(grid, alpha):
    if alpha == 0.0:
        return 1.0
    grid.require_no_zero_mode("Newton-Wigner weight")
    return 1.0 / (2 * grid.omega)


def localized_state(grid: KGrid, y, lam: int = 1, eps: int = 1, alpha: float = 0.0,
                    m: int = 1) -> PhotonState:
    """Position eigenvector ``omega^alpha exp(-i eps k.y)`` at a dual-lattice point ``y``."""
    lam, eps = _mode_sign(lam, eps)
    grid.position_index(y)
    y = np.asarray(y, dtype=float)
    c = np.exp(-1j * eps * np.einsum("i...,i->...", grid.kvec, y))
    if alpha:
        c = c * grid.omega**alpha
    return PhotonState(grid, {(lam, eps): c}, alpha, m, normalizable=False)


def _real_profile(profile):
    profile = np.asarray(profile)
    if np.iscomplexobj(profile):
        if np.any(profile.imag != 0):
            raise ValueError("profile must be real")
        profile = profile.real
    return profile.astype(float)


def circular_state(grid: KGrid, profile, lam0: int, m: int = 1,
                   normalizable: bool = True) -> PhotonState:
    """Single-helicity positive-frequency state with real amplitude ``profile``."""
    if lam0 not in TRANSVERSE:
        raise ValueError("lam0 must be +1 or -1")
    prof = _real_profile(profile)
    return PhotonState(grid, {(lam0, 1): prof}, 0.0, m, real_field=True,
                       normalizable=normalizable)


def linear_state(grid: KGrid, profile, axis: str = "theta", m: int = 1,
                 normalizable: bool = True) -> PhotonState:
    """Linear polarization along ``e_theta`` or ``e_phi`` from equal-weight helicities."""
    prof = _real_profile(profile)
    if axis == "theta":
        cp, cm = prof / np.sqrt(2), prof / np.sqrt(2)
    elif axis == "phi":
        cp, cm = -1j * prof / np.sqrt(2), 1j * prof / np.sqrt(2)
    else:
        raise ValueError("axis must be 'theta' or 'phi'")
    return PhotonState(grid, {(1, 1): cp, (-1, 1): cm}, 0.0, m, real_field=True,
                       normalizable=normalizable)


def delta_profile(grid: KGrid, q, amp: float = 1.0) -> np.ndarray:
    """Real lattice delta ``amp / dk^3`` at node ``q``."""
    c = np.zeros(grid.shape)
    c[grid.node_index(q)] = amp / grid.dk**3
    return c


def enforce_lorenz(state: PhotonState) -> PhotonState:
    """Copy the longitudinal amplitude onto the scalar mode, ``c_0 <- c_3``."""
    coeffs = {k: a for k, a in state.coeffs.items() if k[0] != 0}
    for eps in SIGNS:
        c3 = state.coeffs.get((3, eps))
        if c3 is not None:
            coeffs[(0, eps)] = c3
    return state.with_coeffs(coeffs, lorenz=True)


def lorenz_residual(state: PhotonState) -> float:
    """max |(|k| A_par - omega/c A^0)| over nodes, in coefficient units."""
    g = state.grid
    worst = 0.0
    for eps in SIGNS:
        r = g.kmag * state.coeff(3, eps) - g.omega / g.constants.c * state.coeff(0, eps)
        worst = max(worst, float(np.max(np.abs(r))))
    return worst


# -- boundary data ------------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryData:
    """Real transverse ``A`` and ``E`` on the dual lattice at time ``t0``.

    Arrays have shape ``(3, n, n, n)``.
    """

    A0: np.ndarray
    E0: np.ndarray
    t0: float = 0.0


TRANSVERSE_TOL = 1e-10


def from_boundary(grid: KGrid, data: BoundaryData, m: int = 1) -> PhotonState:
    """Positive-frequency coefficients reproducing real ``A`` and ``E`` at ``t0``.

    With ``A = Re A^+`` and ``E = -dA/dt`` the Fourier transforms satisfy
    ``E_hat + i omega A_hat = -(1/2) sqrt(hbar/eps0) a(k) exp(-i omega t0)`` where
    ``a = sum_lam c_lam e_lam``.
    """
    grid.require_no_zero_mode("from_boundary")
    A0 = np.asarray(data.A0, dtype=float)
    E0 = np.asarray(data.E0, dtype=float)
    if A0.shape != (3,) + grid.shape or E0.shape != (3,) + grid.shape:
        raise ValueError("boundary data must have shape (3, n, n, n)")
    Ak = x_to_k(grid, A0)
    Ek = x_to_k(grid, E0)
    fr = frame_vectors(grid.kvec, m)
    e_k = fr[3][1:].real
    for name, f in (("A0", Ak), ("E0", Ek)):
        total = np.sqrt(np.sum(np.abs(f) ** 2))
        par = np.sqrt(np.sum(np.abs(np.sum(e_k * f, axis=0)) ** 2))
        if total > 0 and par > TRANSVERSE_TOL * total:
            raise ValueError(f"{name} is not transverse: longitudinal fraction {par / total:.2e}")
    beta = Ek + 1j * grid.omega * Ak
    a = -2.0 / grid.constants.field_prefactor * beta * np.exp(1j * grid.omega * data.t0)
    coeffs = {}
    for lam in TRANSVERSE:
        coeffs[(lam, 1)] = np.sum(np.conj(fr[lam][1:]) * a, axis=0)
    return PhotonState(grid, coeffs, 0.0, m, real_field=True)

"""Inner products, the photon four-current and the densities built from it."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .polarization import TRANSVERSE, ZETA
from .state import NonNormalizableError, PhotonState, SIGNS
from .synthesis import potential_derivatives, real_psi, synthesize_psi

INVARIANT = "invariant"
NEWTON_WIGNER = "newton_wigner"


@dataclass(frozen=True)
class InnerProductValue:
    value: complex
    convention: str
    sector_breakdown: dict = field(default_factory=dict)

    def __complex__(self):
        return complex(self.value)

    @property
    def real(self) -> float:
        return float(np.real(self.value))

    def to_json(self, residuals=None) -> dict:
        return {
            "convention": self.convention,
            "value_re": float(np.real(self.value)),
            "value_im": float(np.imag(self.value)),
            "sector_breakdown": {f"{m},{e:+d}": [float(np.real(v)), float(np.imag(v))]
                                 for (m, e), v in self.sector_breakdown.items()},
            "residuals": dict(residuals or {}),
        }


def _check_pair(s1: PhotonState, s2: PhotonState, alpha: float):
    if s1.grid != s2.grid:
        raise ValueError("states live on different grids")
    if s1.m != s2.m:
        raise ValueError("states use different transverse frames")
    for s in (s1, s2):
        if s.alpha != alpha:
            raise ValueError(f"state has alpha={s.alpha}; this product needs alpha={alpha}")


def _sum(arr) -> complex:
    # fixed-order pairwise reduction (numpy's default for contiguous arrays)
    return complex(np.sum(np.ascontiguousarray(arr).ravel()))


def _product(s1, s2, weight, convention):
    g = s1.grid
    parts = {}
    for key in sorted(set(s1.coeffs) & set(s2.coeffs)):
        mode = key[0]
        c1, c2 = s1.coeffs[key], s2.coeffs[key]
        parts[key] = ZETA[mode] * g.k_weight * _sum(np.conj(c1) * c2 * weight)
    return InnerProductValue(sum(parts.values(), 0j), convention, parts)


def inner_product(s1: PhotonState, s2: PhotonState) -> InnerProductValue:
    """``sum_k dk^3/(2pi)^3 sum_{lam,eps} zeta_lam c1^* c2`` for ``alpha = 0`` states."""
    _check_pair(s1, s2, 0.0)
    return _product(s1, s2, 1.0, INVARIANT)


def inner_product_nw(s1: PhotonState, s2: PhotonState) -> InnerProductValue:
    """Newton-Wigner product: extra node weight ``1/(2 omega)``, ``alpha = 1/2`` states."""
    _check_pair(s1, s2, 0.5)
    s1.grid.require_no_zero_mode("the Newton-Wigner product")
    return _product(s1, s2, 1.0 / (2 * s1.grid.omega), NEWTON_WIGNER)


def product(s1: PhotonState, s2: PhotonState) -> InnerProductValue:
    """The product matching the states' ``alpha``."""
    return inner_product_nw(s1, s2) if s1.alpha == 0.5 else inner_product(s1, s2)


def field_product(s1: PhotonState, s2: PhotonState) -> InnerProductValue:
    """``sum_k dk^3/(2pi)^3 zeta c1^* c2 / (2 omega)`` regardless of ``alpha``.

    This is what the configuration-space current integrates to for fields built
    with the invariant measure: ``int J^0 d^3x = field_product(s, s)``.
    """
    if s1.grid != s2.grid:
        raise ValueError("states live on different grids")
    s1.grid.require_no_zero_mode("field_product")
    return _product(s1, s2, 1.0 / (2 * s1.grid.omega), "field")


def norm_squared(state: PhotonState) -> float:
    """Squared norm in the matching product; raises for non-normalizable states."""
    if not state.normalizable or state.is_zero:
        raise NonNormalizableError("state is not normalizable")
    return product(state, state).real


def norm(state: PhotonState) -> float:
    n2 = norm_squared(state)
    if n2 <= 0:
        raise NonNormalizableError(f"squared norm {n2:.3e} is not positive")
    return float(np.sqrt(n2))


def normalized(state: PhotonState) -> PhotonState:
    return state * (1.0 / norm(state))


# -- four-current ------------------------------------------------------------------

@dataclass(frozen=True)
class CurrentSample:
    """``j0`` number density and ``jvec = c J^i`` current density at ``event``.

    When the event position is ``None`` the arrays cover the whole dual lattice.
    """

    j0: np.ndarray
    jvec: np.ndarray
    event: tuple


def _mink(a, b):
    """``a_nu b^nu`` over the leading axis, no conjugation."""
    return a[0] * b[0] - np.sum(a[1:] * b[1:], axis=0)


def _fields(state, t):
    return {eps: potential_derivatives(state, eps, t) for eps in SIGNS
            if any(e == eps for (_, e) in state.coeffs)}


def _current_from_fields(F, g_const, c):
    """J^mu = -i g [A*_nu d^mu Ac^nu - Ac^nu d^mu A*_nu] with A = sum A^eps, Ac = sum eps A^eps."""
    A = sum(f["A"] for f in F.values())
    Ac = sum(eps * f["A"] for eps, f in F.items())
    dA0 = sum(f["dct"] for f in F.values())
    dAc0 = sum(eps * f["dct"] for eps, f in F.items())
    Ast = np.conj(A)
    j0 = -1j * g_const * (_mink(Ast, dAc0) - _mink(Ac, np.conj(dA0)))
    gradA = sum(f["grad"] for f in F.values())
    gradAc = sum(eps * f["grad"] for eps, f in F.items())
    # d^i = -d_i
    ji = np.stack([-1j * g_const * (_mink(Ast, -gradAc[i]) - _mink(Ac, -np.conj(gradA[i])))
                   for i in range(3)])
    return j0, c * ji


def _zero_current(g):
    return np.zeros(g.shape), np.zeros((3,) + g.shape)


def four_current(state: PhotonState, t: float = 0.0, x=None) -> CurrentSample:
    """Photon four-current from ``A`` and its conjugate field ``A_c``.

    Time derivatives multiply by ``-i eps omega`` and spatial ones by
    ``i eps k`` before synthesis.  The real part is returned.  For a single
    frequency sign the bilinear form is real up to round-off; with both signs
    present the cross-sign terms carry an imaginary part, and the real part is
    the Hermitian-symmetrized current.
    """
    g = state.grid
    F = _fields(state, t)
    if not F:
        j0, jv = _zero_current(g)
    else:
        j0, jv = _current_from_fields(F, g.constants.current_prefactor, g.constants.c)
        j0, jv = j0.real, jv.real
    if x is None:
        return CurrentSample(j0, jv, (t, None))
    idx = g.position_index(x)
    return CurrentSample(j0[idx], jv[(slice(None),) + idx], (t, tuple(np.asarray(x, float))))


def current_imaginary_residual(state: PhotonState, t: float = 0.0) -> float:
    """``max |Im J^mu| / max |J^0|``; round-off for single-sign states."""
    F = _fields(state, t)
    if not F:
        return 0.0
    j0, jv = _current_from_fields(F, state.grid.constants.current_prefactor,
                                  state.grid.constants.c)
    return float(max(np.max(np.abs(j0.imag)), np.max(np.abs(jv.imag))) / np.max(np.abs(j0.real)))


def density_epsilon_basis(state: PhotonState, t: float = 0.0) -> np.ndarray:
    """``J^0 = 2 g sum_eps Re[-A^eps*_nu D^{1/2} A^eps,nu]`` with modes summed per sign.

    Spatial components enter positively.  Coincides pointwise with the real
    part returned by :func:`four_current`: the cross-sign terms of the bilinear
    current are purely imaginary, so they drop out of both.
    """
    g = state.grid
    F = _fields(state, t)
    out = np.zeros(g.shape)
    for f in F.values():
        out += 2 * g.constants.current_prefactor * np.real(-_mink(np.conj(f["A"]), f["dsqrt"]))
    return out


def divergence_current(state: PhotonState, t: float = 0.0) -> np.ndarray:
    """``div j`` evaluated with spectral Laplacians (the gradient products cancel)."""
    g = state.grid
    F = _fields(state, t)
    if not F:
        return np.zeros(g.shape)
    A = sum(f["A"] for f in F.values())
    Ac = sum(eps * f["A"] for eps, f in F.items())
    lapA = sum(f["lap"] for f in F.values())
    lapAc = sum(eps * f["lap"] for eps, f in F.items())
    gc = g.constants.current_prefactor
    # d_i J^i = -i g [-A*_nu lap Ac^nu + Ac^nu lap A*_nu]
    div = -1j * gc * (-_mink(np.conj(A), lapAc) + _mink(Ac, np.conj(lapA)))
    return (g.constants.c * div).real


def integrated_density(state: PhotonState, t: float = 0.0) -> float:
    return float(np.sum(four_current(state, t).j0) * state.grid.x_weight)


def continuity_residual(state: PhotonState, t: float = 0.0, dt: float | None = None) -> float:
    """Normalized ``max |dJ0/dt + div j|`` with a centered time difference.

    ``dt`` defaults to ``dx / (10 c)``; the result is divided by
    ``max|J0| / T`` with ``T = 1/(c k_max)``.
    """
    g = state.grid
    if state.is_zero:
        return 0.0
    if dt is None:
        dt = g.dx / (10 * g.constants.c)
    dj0 = (four_current(state, t + dt).j0 - four_current(state, t - dt).j0) / (2 * dt)
    div = divergence_current(state, t)
    j0 = four_current(state, t).j0
    scale = np.max(np.abs(j0)) * g.constants.c * g.k_max
    return float(np.max(np.abs(dj0 + div)) / scale)


# -- Born rule / Parseval ------------------------------------------------------------

def born_density(psi) -> tuple[np.ndarray, float | None]:
    """``rho = psi^2`` for a real amplitude; returns ``(rho, sum rho dx^3)`` if a grid is known.

    ``psi`` may be a bare array (total returned as ``sum rho``, no volume factor)
    or a ``(psi, grid)`` tuple.
    """
    grid = None
    if isinstance(psi, tuple):
        psi, grid = psi
    psi = np.asarray(psi)
    if np.iscomplexobj(psi):
        raise TypeError("the Born density needs the real amplitude; reduce the field first")
    rho = psi**2
    weight = grid.x_weight if grid is not None else 1.0
    return rho, float(np.sum(rho) * weight)


class ParsevalReport(NamedTuple):
    knorm: float
    xnorm: float
    mismatch: float


def parseval_report(state: PhotonState) -> ParsevalReport:
    """k-space norm (zeta-weighted) against ``sum |psi|^2 dx^3`` of the trivial transforms."""
    if not state.normalizable or state.is_zero:
        raise NonNormalizableError("Parseval check needs a normalizable state")
    g = state.grid
    knorm = sum(ZETA[m] * g.k_weight * float(np.sum(np.abs(c) ** 2))
                for (m, _), c in state.sectors())
    psis = synthesize_psi(state)
    xnorm = sum(ZETA[m] * g.x_weight * float(np.sum(np.abs(p) ** 2))
                for (m, _), p in psis.items())
    return ParsevalReport(knorm, xnorm, abs(knorm - xnorm) / abs(knorm))


class RealNormReport(NamedTuple):
    """Norm bookkeeping for ``psi = Re sum_lam psi_lam^+``.

    ``predicted`` is the k-space value of ``sum psi^2 dx^3``:
    ``(|C|^2 + Re sum_k C(k) C(-k)) / 2`` with ``C = sum_lam c_lam^+``.
    ``ratio`` is ``eps_norm / xnorm``, 2 when ``C(k)`` and ``C(-k)`` never overlap
    for a single helicity.
    """

    eps_norm: float
    xnorm: float
    predicted: float
    ratio: float


def _reflect(grid, arr):
    if grid.offset:
        return arr[::-1, ::-1, ::-1]
    # unshifted: -k of node i is node n - i (mod n); the -k_max row has no partner
    out = np.roll(arr[::-1, ::-1, ::-1], 1, axis=(0, 1, 2))
    out[0, :, :] = 0
    out[:, 0, :] = 0
    out[:, :, 0] = 0
    return out


def real_norm_report(state: PhotonState) -> RealNormReport:
    if not state.real_field:
        raise ValueError("real-norm bookkeeping applies to real-field states")
    if state.is_zero:
        raise NonNormalizableError("zero state")
    g = state.grid
    C = sum((c for (m, e), c in state.sectors() if e == 1), np.zeros(g.shape, complex))
    eps_norm = norm_squared(state)
    psi = real_psi(state)
    xnorm = float(np.sum(psi**2) * g.x_weight)
    cross = np.sum(C * _reflect(g, C)) * g.k_weight
    predicted = 0.5 * (float(np.sum(np.abs(C) ** 2)) * g.k_weight + float(np.real(cross)))
    return RealNormReport(eps_norm, xnorm, predicted, eps_norm / xnorm)


def normalize_real(state: PhotonState) -> PhotonState:
    """Rescale so that ``sum psi^2 dx^3 = 1`` for ``psi = Re sum_lam psi_lam^+``."""
    if not state.real_field:
        raise ValueError("normalize_real applies to real-field states")
    psi = real_psi(state)
    total = float(np.sum(psi**2) * state.grid.x_weight)
    if not total > 0:
        raise NonNormalizableError("real amplitude vanishes")
    return state * (1.0 / np.sqrt(total))

"""Observables acting on :class:`PhotonState` coefficient functions."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import ZeroModeError
from .polarization import (TRANSVERSE, ZETA, angles, euler_connection, frame_vectors,
                           spherical_unit_vectors, spin_matrices)
from .products import norm_squared, product
from .state import NonNormalizableError, PhotonState, SIGNS

#: amplitude (relative to peak) allowed within two nodes of the lattice edge
SUPPORT_TOL = 1e-8

_LEVI = np.zeros((3, 3, 3))
_LEVI[0, 1, 2] = _LEVI[1, 2, 0] = _LEVI[2, 0, 1] = 1
_LEVI[0, 2, 1] = _LEVI[2, 1, 0] = _LEVI[1, 0, 2] = -1


@dataclass(frozen=True)
class OperatorReport:
    expectation: complex
    norm_used: float
    hermiticity_residual: float


# -- diagonal operators --------------------------------------------------------------

def apply_d_sqrt(state: PhotonState) -> PhotonState:
    """``D^{1/2}``: multiply every coefficient by ``|k|``."""
    return state.map(lambda c, *_: c * state.grid.kmag, real_field=False, lorenz=state.lorenz)


def apply_hamiltonian(state: PhotonState) -> PhotonState:
    g = state.grid
    return state.map(lambda c, *_: c * (g.constants.hbar * g.omega), real_field=False,
                     lorenz=state.lorenz)


def evolve(state: PhotonState, tau: float) -> PhotonState:
    """``c^eps <- exp(-i eps omega tau) c^eps``."""
    w = state.grid.omega
    return state.map(lambda c, mode, eps: c * np.exp(-1j * eps * w * tau))


def conjugate_field(state: PhotonState) -> PhotonState:
    """``A_c = i D^{-1/2} d_ct A``: multiplies each sector by its frequency sign."""
    return state.map(lambda c, mode, eps: c * eps, real_field=False)


def helicity_op(state: PhotonState) -> PhotonState:
    """Helicity ``e_k . S``: transverse sectors scaled by ``lam``, others annihilated."""
    coeffs = {k: c * k[0] for k, c in state.coeffs.items() if k[0] in TRANSVERSE}
    return state.with_coeffs(coeffs, lorenz=False, real_field=False)


def apply_momentum(state: PhotonState) -> tuple[PhotonState, PhotonState, PhotonState]:
    """``hbar k_j`` for ``j = x, y, z``."""
    g = state.grid
    return tuple(state.map(lambda c, *_, j=j: c * (g.constants.hbar * g.kvec[j]),
                           real_field=False, normalizable=state.normalizable)
                 for j in range(3))


def _expect_diagonal(state, weights):
    """``(s, f s)/(s, s)`` for node-diagonal ``f`` (list of arrays)."""
    n2 = norm_squared(state)
    g = state.grid
    w_alpha = 1.0 if state.alpha == 0 else 1.0 / (2 * g.omega)
    out = []
    for f in weights:
        acc = 0.0
        for (mode, _), c in state.sectors():
            acc += ZETA[mode] * np.sum(np.abs(c) ** 2 * w_alpha * f) * g.k_weight
        out.append(float(acc) / n2)
    return np.array(out)


def energy_expectation(state: PhotonState) -> float:
    g = state.grid
    return float(_expect_diagonal(state, [g.constants.hbar * g.omega])[0])


def momentum_expectation(state: PhotonState) -> np.ndarray:
    """``<hbar k>`` in the product matching the state's ``alpha``."""
    g = state.grid
    return _expect_diagonal(state, [g.constants.hbar * g.kvec[j] for j in range(3)])


def velocity_expectation(state: PhotonState) -> np.ndarray:
    """``<c e_k>``; the velocity operator is ``c k/|k|`` in k-space."""
    g = state.grid
    g.require_no_zero_mode("velocity")
    return _expect_diagonal(state, [g.constants.c * g.kvec[j] / g.kmag for j in range(3)])


def helicity_expectation(state: PhotonState) -> float:
    return float(np.real(product(state, helicity_op(state)).value) / norm_squared(state))


def intrinsic_j3(k, lam: int, m: int = 1, hbar: float = 1.0) -> float:
    """Third component of ``hbar lam ((cos t - m)/sin t e_theta + e_k)``.

    Equals ``hbar m lam`` at every direction; on the polar axis the connection
    must stay finite (``cos theta = m``).
    """
    if lam not in TRANSVERSE:
        raise ValueError("lam must be +1 or -1")
    k = np.asarray(k, dtype=float)
    kmag, theta, phi = angles(k)
    if np.any(kmag == 0):
        raise ZeroModeError("|k| = 0")
    st, ct = np.sin(theta), np.cos(theta)
    e_k, e_theta, _ = spherical_unit_vectors(theta, phi)
    pole = st < 1e-12
    if np.any(pole & (np.abs(ct - m) > 1e-9)):
        raise ZeroModeError(f"J_int diverges on the polar axis for m={m}")
    with np.errstate(divide="ignore", invalid="ignore"):
        coef = np.where(pole, 0.0, (ct - m) / np.where(pole, 1.0, st))
    j_int = hbar * lam * (coef * e_theta + e_k)
    # pole limit: coef * e_theta -> -(cos - m) e3 = 0 there
    return j_int[2] if j_int.ndim > 1 else float(j_int[2])


# -- position operator ---------------------------------------------------------------

def derivative_4th(f: np.ndarray, h: float, axis: int) -> np.ndarray:
    """Fourth-order finite-difference derivative, one-sided on the two outer shells."""
    f = np.moveaxis(f, axis, 0)
    d = np.empty_like(f)
    d[2:-2] = (f[:-4] - 8 * f[1:-3] + 8 * f[3:-1] - f[4:]) / (12 * h)
    d[0] = (-25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3] - 3 * f[4]) / (12 * h)
    d[1] = (-3 * f[0] - 10 * f[1] + 18 * f[2] - 6 * f[3] + f[4]) / (12 * h)
    d[-1] = (25 * f[-1] - 48 * f[-2] + 36 * f[-3] - 16 * f[-4] + 3 * f[-5]) / (12 * h)
    d[-2] = (3 * f[-1] + 10 * f[-2] - 18 * f[-3] + 6 * f[-4] - f[-5]) / (12 * h)
    return np.moveaxis(d, 0, axis)


def support_violation(c: np.ndarray, width: int = 2) -> float:
    """Largest ``|c|`` within ``width`` nodes of the lattice edge, relative to peak."""
    peak = np.max(np.abs(c))
    if peak == 0:
        return 0.0
    n = c.shape[0]
    inner = np.zeros(c.shape, bool)
    inner[width:n - width, width:n - width, width:n - width] = True
    return float(np.max(np.abs(c[~inner])) / peak)


def _connection_table(grid, m):
    """``a^(m)`` at every node; on-axis poles with a divergent connection raise."""
    return euler_connection(grid.kvec, m)


def apply_position(state: PhotonState, alpha: float | None = None, *,
                   check_support: bool = True, representation: str = "helicity"):
    """Position operator with commuting components, one output state per axis.

    In the positive-frequency sector

    ``x = i d_k - i alpha k/|k|^2 + (k x S)/|k|^2 - sigma a^(m)``

    acting on ``V = sum_lam c_lam e_lam``; the negative-frequency sector uses the
    complex-conjugate representation, which amounts to an overall sign.

    ``representation="helicity"`` (default) uses the exact cancellation of the
    frame terms, ``x (c e_lam) = (i d_k c - i alpha k/|k|^2 c) e_lam``, so finite
    differences only ever touch the scalar coefficients.  ``"cartesian"`` builds
    ``V`` explicitly and differentiates it; it is accurate only away from the
    frame's singular polar string and from ``k = 0``.  The helicity path applies
    the ``alpha`` term as the similarity ``omega^alpha (i d) omega^-alpha``,
    identical in the continuum.  Cartesian results are
    projected back onto ``e_+1, e_-1, e_k``.
    """
    if representation not in ("helicity", "cartesian"):
        raise ValueError("representation must be 'helicity' or 'cartesian'")
    if alpha is None:
        alpha = state.alpha
    if alpha != state.alpha:
        raise ValueError(f"operator alpha={alpha} does not match the state's alpha={state.alpha}")
    if not state.is_transverse:
        raise ValueError("the position operator acts on transverse modes only")
    g = state.grid
    g.require_no_zero_mode("apply_position")
    if check_support:
        for key, c in state.coeffs.items():
            v = support_violation(c)
            if v >= SUPPORT_TOL:
                raise ValueError(f"sector {key} reaches the lattice edge ({v:.2e} of peak); "
                                 "finite differences need decaying coefficients")
    if representation == "helicity":
        return _position_helicity(state, alpha)
    frame = frame_vectors(g.kvec, state.m)
    S = spin_matrices()
    k = g.kvec
    k2 = g.kmag**2
    a = _connection_table(g, state.m)
    # (k x S)_j = eps_{jab} k_a S_b, shape (3, 3, 3, n, n, n)
    kxS = np.einsum("jab,a...,blm->jlm...", _LEVI, k, S)
    out = [dict() for _ in range(3)]
    for eps in SIGNS:
        sectors = [lam for lam in TRANSVERSE if (lam, eps) in state.coeffs]
        if not sectors:
            continue
        V = sum(state.coeffs[(lam, eps)] * frame[lam][1:] for lam in sectors)
        sigV = sum(lam * state.coeffs[(lam, eps)] * frame[lam][1:] for lam in sectors)
        for j in range(3):
            X = 1j * derivative_4th(V, g.dk, axis=1 + j)
            if alpha:
                X = X - 1j * alpha * (k[j] / k2) * V
            X = X + np.einsum("lm...,m...->l...", kxS[j], V) / k2
            X = X - a[j] * sigV
            X = eps * X
            for lam in (1, -1, 3):
                out[j][(lam, eps)] = np.sum(np.conj(frame[lam][1:]) * X, axis=0)
    return tuple(PhotonState(g, out[j], state.alpha, state.m,
                             normalizable=state.normalizable) for j in range(3))


def _position_helicity(state, alpha):
    # i d - i alpha k/|k|^2 = omega^alpha (i d) omega^-alpha; differencing the
    # conjugated form keeps the operator antisymmetric under the 1/omega weight
    g = state.grid
    scale = g.kmag**alpha if alpha else None
    out = [dict() for _ in range(3)]
    for (lam, eps), c in state.coeffs.items():
        f = c / scale if alpha else c
        for j in range(3):
            X = 1j * derivative_4th(f, g.dk, axis=j)
            if alpha:
                X = X * scale
            out[j][(lam, eps)] = eps * X
    return tuple(PhotonState(g, out[j], state.alpha, state.m,
                             normalizable=state.normalizable) for j in range(3))


def position_expectation(state: PhotonState) -> np.ndarray:
    """``Re (s, x s)/(s, s)`` per axis in the product matching ``alpha``."""
    n2 = norm_squared(state)
    xs = apply_position(state)
    return np.array([np.real(product(state, x).value) for x in xs]) / n2


def position_report(state: PhotonState) -> list[OperatorReport]:
    n2 = norm_squared(state)
    xs = apply_position(state)
    reports = []
    for x in xs:
        ev = product(state, x).value
        herm = abs(ev - np.conj(product(x, state).value)) / n2
        reports.append(OperatorReport(ev / n2, float(np.sqrt(n2)), float(herm)))
    return reports


def hermiticity_asymmetry(s1: PhotonState, s2: PhotonState) -> float:
    """``max_j |(s1, x_j s2) - (x_j s1, s2)| / (|s1| |s2| L)`` with ``L`` the box period."""
    if s1.alpha != s2.alpha:
        raise ValueError("states use different alpha conventions")
    x1 = apply_position(s1)
    x2 = apply_position(s2)
    scale = np.sqrt(norm_squared(s1) * norm_squared(s2)) * s1.grid.length
    worst = 0.0
    for a, b in zip(x1, x2):
        diff = product(s1, b).value - product(a, s2).value
        worst = max(worst, abs(diff) / scale)
    return float(worst)


def eigen_residual(state: PhotonState, y, mask=None) -> float:
    """``|x c - y c| / |c|`` over all three axes, in the product's weight.

    ``mask`` restricts both norms to a boolean node subset.
    """
    g = state.grid
    y = np.asarray(y, dtype=float)
    xs = apply_position(state, check_support=False)
    w = 1.0 if state.alpha == 0 else 1.0 / (2 * g.omega)
    if mask is None:
        mask = np.ones(g.shape, bool)
    num = 0.0
    for j, xj in enumerate(xs):
        for key in set(xj.coeffs) | set(state.coeffs):
            r = xj.coeff(*key) - y[j] * state.coeff(*key)
            num += float(np.sum((np.abs(r) ** 2 * w)[mask]))
    den = sum(float(np.sum((np.abs(c) ** 2 * w)[mask])) for c in state.coeffs.values())
    return float(np.sqrt(num / den))


def commutator_norm(state: PhotonState, i: int, j: int) -> float:
    """``|[x_i, x_j] s| / |s|`` with support checks disabled for the second application."""
    xi = apply_position(state)[i]
    xj = apply_position(state)[j]
    xixj = apply_position(xj, check_support=False)[i]
    xjxi = apply_position(xi, check_support=False)[j]
    comm = xixj - xjxi
    return float(np.sqrt(abs(norm_squared_any(comm)) / norm_squared(state)))


def norm_squared_any(state: PhotonState) -> float:
    g = state.grid
    w = 1.0 if state.alpha == 0 else 1.0 / (2 * g.omega)
    return float(sum(np.sum(np.abs(c) ** 2 * w) for c in state.coeffs.values()) * g.k_weight)


__all__ = [
    "OperatorReport", "apply_d_sqrt", "apply_hamiltonian", "evolve", "conjugate_field",
    "helicity_op", "apply_momentum", "energy_expectation", "momentum_expectation",
    "velocity_expectation", "helicity_expectation", "intrinsic_j3", "derivative_4th",
    "apply_position", "position_expectation", "position_report", "hermiticity_asymmetry",
    "eigen_residual", "commutator_norm", "NonNormalizableError",
]

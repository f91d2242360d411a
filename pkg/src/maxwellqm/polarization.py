"""Polarization tetrads for the chi = -m phi family of transverse bases.

Mode labels follow the four-potential: ``0`` scalar, ``+1``/``-1`` transverse
helicity, ``3`` longitudinal.  Four-vectors are stored with the time component
first.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import KGrid, ZeroModeError

MODES = (0, 1, -1, 3)
TRANSVERSE = (1, -1)
#: metric signs entering inner products, indexed by mode label
ZETA = {0: -1, 1: 1, -1: 1, 3: 1}

_POLE_TOL = 1e-12


def spin_matrices() -> np.ndarray:
    """Spin-1 matrices ``(S_j)_{lm} = -i eps_{jlm}``, shape ``(3, 3, 3)``."""
    eps = np.zeros((3, 3, 3))
    eps[0, 1, 2] = eps[1, 2, 0] = eps[2, 0, 1] = 1
    eps[0, 2, 1] = eps[2, 1, 0] = eps[1, 0, 2] = -1
    return -1j * eps


def angles(k):
    """Polar angles ``(|k|, theta, phi)`` with ``phi = atan2(ky, kx)``.

    ``k`` has its Cartesian components on the first axis.
    """
    k = np.asarray(k, dtype=float)
    kmag = np.sqrt(np.sum(k**2, axis=0))
    rho = np.hypot(k[0], k[1])
    theta = np.arctan2(rho, k[2])
    phi = np.arctan2(k[1], k[0])
    return kmag, theta, phi


def spherical_unit_vectors(theta, phi):
    """``(e_k, e_theta, e_phi)``, each of shape ``(3,) + theta.shape``."""
    st, ct = np.sin(theta), np.cos(theta)
    sp, cp = np.sin(phi), np.cos(phi)
    e_k = np.stack([st * cp, st * sp, ct])
    e_theta = np.stack([ct * cp, ct * sp, -st])
    e_phi = np.stack([-sp, cp, np.zeros_like(ct)])
    return e_k, e_theta, e_phi


def _check_nonzero(kmag):
    if np.any(np.asarray(kmag) == 0):
        raise ZeroModeError("polarization direction is undefined at |k| = 0")


def _transverse_cartesian(theta, phi, lam, m):
    _, e_theta, e_phi = spherical_unit_vectors(theta, phi)
    return (e_theta + 1j * lam * e_phi) * np.exp(1j * lam * m * phi) / np.sqrt(2)


def transverse_unit(k, lam: int, m: int = 1) -> np.ndarray:
    """Helicity unit four-vector ``(0, (e_theta + i lam e_phi) e^{i lam m phi}/sqrt 2)``.

    Works node-wise when ``k`` has shape ``(3, ...)``.  On the polar axis
    ``phi = 0`` and the expression is its own limit.
    """
    if lam not in TRANSVERSE:
        raise ValueError("lam must be +1 or -1")
    kmag, theta, phi = angles(k)
    _check_nonzero(kmag)
    spatial = _transverse_cartesian(theta, phi, lam, m)
    return np.concatenate([np.zeros((1,) + spatial.shape[1:], complex), spatial])


def cartesian_terms(theta, phi, lam: int, m: int = 1):
    """Split ``e_lam`` into its three angular-momentum components.

    Returns a list of ``(vector, L3, S3)`` in units of hbar.  The vectors sum to
    the spatial part of :func:`transverse_unit`; each carries ``exp(i L3 phi)``
    and is an ``S3`` eigenvector, with ``L3 + S3 = m lam`` for all three.
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    ct, st = np.cos(theta), np.sin(theta)
    em = np.array([1, -1j, 0])
    ep = np.array([1, 1j, 0])
    e3 = np.array([0, 0, 1])
    pref = 1 / (2 * np.sqrt(2))
    first = pref * (ct - lam) * np.exp(1j * (m * lam + 1) * phi)
    second = -2 * pref * st * np.exp(1j * m * lam * phi)
    third = pref * (ct + lam) * np.exp(1j * (m * lam - 1) * phi)
    return [
        (np.multiply.outer(em, first), m * lam + 1, -1),
        (np.multiply.outer(e3, second), m * lam, 0),
        (np.multiply.outer(ep, third), m * lam - 1, 1),
    ]


def euler_connection(k, m: int = 1) -> np.ndarray:
    """Connection ``a^(m) = (cos theta - m) / (|k| sin theta) e_phi``.

    On the polar axis the value is returned only when ``cos theta = m`` (the
    finite limit, zero); otherwise the pole is a genuine singularity.
    """
    kmag, theta, phi = angles(k)
    _check_nonzero(kmag)
    st, ct = np.sin(theta), np.cos(theta)
    _, _, e_phi = spherical_unit_vectors(theta, phi)
    pole = st < _POLE_TOL
    if np.any(pole & (np.abs(ct - m) > 1e-9)):
        raise ZeroModeError(f"connection a^({m}) diverges on the polar axis")
    with np.errstate(divide="ignore", invalid="ignore"):
        coef = np.where(pole, 0.0, (ct - m) / (kmag * np.where(pole, 1.0, st)))
    return coef * e_phi


@dataclass(frozen=True)
class PolarizationFrame:
    """Tetrad table on a lattice: ``vectors[mode]`` has shape ``(4, n, n, n)``."""

    m: int
    vectors: dict

    def spatial(self, mode: int) -> np.ndarray:
        return self.vectors[mode][1:]

    def helicity_eigenvalue(self, mode: int) -> int:
        return mode if mode in TRANSVERSE else 0


def frame_vectors(k, m: int = 1, allow_zero: bool = False) -> dict:
    """Tetrad at arbitrary wavevectors ``k`` of shape ``(3, ...)``.

    With ``allow_zero`` the vectors at ``|k| = 0`` (other than ``e_0``) are set to
    zero instead of raising.
    """
    k = np.asarray(k, dtype=float)
    kmag, theta, phi = angles(k)
    zero = kmag == 0
    if np.any(zero) and not allow_zero:
        raise ZeroModeError("frame undefined at |k| = 0; use an offset grid")
    shape = kmag.shape
    e_k, _, _ = spherical_unit_vectors(theta, phi)
    out = {0: np.zeros((4,) + shape, complex)}
    out[0][0] = 1.0
    long = np.zeros((4,) + shape, complex)
    long[1:] = e_k
    out[3] = long
    for lam in TRANSVERSE:
        v = np.zeros((4,) + shape, complex)
        v[1:] = _transverse_cartesian(theta, phi, lam, m)
        out[lam] = v
    if np.any(zero):
        for mode in (1, -1, 3):
            out[mode][:, zero] = 0
    for v in out.values():
        v.setflags(write=False)
    return out


def frame_table(grid: KGrid, m: int = 1) -> PolarizationFrame:
    """Tetrad at every node of ``grid``; the grid must not contain ``k = 0``."""
    grid.require_no_zero_mode("frame_table")
    return PolarizationFrame(m, frame_vectors(grid.kvec, m))


def minkowski_dot(a, b) -> np.ndarray:
    """``a*_mu b^mu`` with signature (+,-,-,-), conjugating ``a``."""
    return np.conj(a[0]) * b[0] - np.sum(np.conj(a[1:]) * b[1:], axis=0)


def frame_residuals(frame: PolarizationFrame, k) -> dict:
    """Largest violations of the tetrad relations, node-wise over ``k``."""
    S = spin_matrices()
    kmag, theta, phi = angles(k)
    e_k, _, _ = spherical_unit_vectors(theta, phi)
    out = {}
    # e_{lam,mu}^* e_{lam'}^mu = -zeta_lam delta
    worst = 0.0
    for a in MODES:
        for b in MODES:
            want = -ZETA[a] if a == b else 0.0
            worst = max(worst, float(np.max(np.abs(
                minkowski_dot(frame.vectors[a], frame.vectors[b]) - want))))
    out["metric"] = worst
    # spatial orthonormality among +1, -1, 3
    worst = 0.0
    for a in (1, -1, 3):
        for b in (1, -1, 3):
            dot = np.sum(np.conj(frame.spatial(a)) * frame.spatial(b), axis=0)
            worst = max(worst, float(np.max(np.abs(dot - (a == b)))))
    out["orthonormality"] = worst
    # completeness sum_lam e_lam e_lam^dagger = 1
    comp = sum(np.einsum("i...,j...->ij...", frame.spatial(a), np.conj(frame.spatial(a)))
               for a in (1, -1, 3))
    eye = np.eye(3).reshape((3, 3) + (1,) * (comp.ndim - 2))
    out["completeness"] = float(np.max(np.abs(comp - eye)))
    # helicity: (e_k . S) e_lam = lam e_lam and e_k x e_lam = -i lam e_lam
    worst_h = worst_x = 0.0
    for lam in (1, -1, 3):
        v = frame.spatial(lam)
        sig = np.einsum("j...,jab,b...->a...", e_k, S, v)
        worst_h = max(worst_h, float(np.max(np.abs(sig - frame.helicity_eigenvalue(lam) * v))))
        if lam in TRANSVERSE:
            cross = np.cross(e_k, v, axis=0)
            worst_x = max(worst_x, float(np.max(np.abs(cross + 1j * lam * v))))
    out["helicity"] = worst_h
    out["cross_product"] = worst_x
    return out

"""Configuration-space fields of a photon state.

For a sector ``(lam, eps)`` with vector amplitude ``V = c_lam^eps e_lam``:

* ``A = i sqrt(hbar/eps0) sum_k dk^3/(2pi)^3 V/(2 omega) exp(-i eps (omega t - k.x))``
* ``E = -dA/dt = -(eps/2) sqrt(hbar/eps0) sum_k dk^3/(2pi)^3 V exp(...)``
* ``pi = -eps0 dA/dt``
* ``psi = sum_k dk^3/(2pi)^3 c exp(...)``

Time derivatives are spectral everywhere in this module.
"""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .grid import KGrid, MeasureKind, dump_array, k_to_x
from .state import PhotonState


@dataclass(frozen=True, eq=False)
class FieldSnapshot:
    """Fields at time ``t`` on the dual lattice.

    ``A`` and ``pi`` have shape ``(4, n, n, n)``, ``E`` ``(3, n, n, n)`` and ``psi``
    ``(n, n, n)``.  ``per_mode`` maps ``(lam, eps)`` to the same set of fields for
    that sector alone.
    """

    grid: KGrid
    t: float
    A: np.ndarray
    E: np.ndarray
    pi: np.ndarray
    psi: np.ndarray
    real: bool = False
    per_mode: dict = field(default_factory=dict)

    @property
    def has_negative_frequency(self) -> bool:
        return any(eps == -1 for (_, eps) in self.per_mode)


def _require_finite_frame(state: PhotonState):
    """Frame at k = 0 is undefined; allow it only if no coefficient lives there."""
    g = state.grid
    if not g.has_zero_mode:
        return False
    zero = g.kmag == 0
    for (mode, _), c in state.coeffs.items():
        if mode != 0 and np.any(c[zero] != 0):
            raise ValueError("state has content at k = 0 where the frame is undefined")
    return True


def _sector_amplitude(state, mode, eps, frame):
    return state.coeffs[(mode, eps)] * frame[mode]


def sector_potential(state: PhotonState, mode: int, eps: int, t: float = 0.0) -> np.ndarray:
    """Four-potential of one sector via the invariant measure."""
    frame = state.frame()
    V = _sector_amplitude(state, mode, eps, frame)
    return 1j * state.grid.constants.field_prefactor * k_to_x(
        state.grid, V, MeasureKind.INVARIANT, eps, t)


def sector_electric(state: PhotonState, mode: int, eps: int, t: float = 0.0,
                    frame=None) -> np.ndarray:
    """``E = -dA/dt`` of one sector via the trivial measure."""
    if frame is None:
        frame = state.frame(allow_zero=_require_finite_frame(state))
    V = _sector_amplitude(state, mode, eps, frame)[1:]
    return -0.5 * eps * state.grid.constants.field_prefactor * k_to_x(
        state.grid, V, MeasureKind.TRIVIAL, eps, t)


def electric_field(state: PhotonState, t: float = 0.0) -> np.ndarray:
    """Total complex ``E`` summed over sectors; valid on unshifted grids too."""
    frame = state.frame(allow_zero=_require_finite_frame(state))
    out = np.zeros((3,) + state.grid.shape, complex)
    for (mode, eps) in state.coeffs:
        out += sector_electric(state, mode, eps, t, frame)
    return out


def electric_from_potential(state: PhotonState, t: float = 0.0) -> np.ndarray:
    """``-dA/dt`` through the invariant-measure path (independent of :func:`electric_field`)."""
    g = state.grid
    frame = state.frame()
    out = np.zeros((3,) + g.shape, complex)
    for (mode, eps) in state.coeffs:
        V = _sector_amplitude(state, mode, eps, frame)[1:]
        # -d/dt of i sqrt(hbar/eps0) exp(-i eps omega t) is -eps omega sqrt(hbar/eps0)
        out += -eps * g.constants.field_prefactor * k_to_x(
            g, V * g.omega, MeasureKind.INVARIANT, eps, t)
    return out


def synthesize_psi(state: PhotonState, t: float = 0.0) -> dict:
    """Probability amplitudes ``psi_lam^eps`` keyed by ``(lam, eps)``."""
    return {key: k_to_x(state.grid, c, MeasureKind.TRIVIAL, key[1], t)
            for key, c in state.sectors()}


def synthesize(state: PhotonState, t: float = 0.0) -> FieldSnapshot:
    """All fields of ``state`` at time ``t`` (needs a grid without ``k = 0``)."""
    g = state.grid
    g.require_no_zero_mode("synthesize (invariant measure)")
    frame = state.frame()
    pref = g.constants.field_prefactor
    eps0 = g.constants.eps0
    A = np.zeros((4,) + g.shape, complex)
    E = np.zeros((3,) + g.shape, complex)
    pi = np.zeros((4,) + g.shape, complex)
    psi = np.zeros(g.shape, complex)
    per_mode = {}
    for (mode, eps), c in state.sectors():
        V = c * frame[mode]
        a = 1j * pref * k_to_x(g, V, MeasureKind.INVARIANT, eps, t)
        # pi = -eps0 dA/dt = -eps0 * (-i eps omega) * a, done in k-space
        p = -0.5 * eps * pref * eps0 * k_to_x(g, V, MeasureKind.TRIVIAL, eps, t)
        e = p[1:] / eps0
        ps = k_to_x(g, c, MeasureKind.TRIVIAL, eps, t)
        per_mode[(mode, eps)] = {"A": a, "E": e, "pi": p, "psi": ps}
        A += a
        E += e
        pi += p
        psi += ps
    return FieldSnapshot(g, t, A, E, pi, psi, False, per_mode)


def reduce_real(obj):
    """Real fields ``Re sum_lam (.)^+`` from a snapshot or a ``psi`` dictionary.

    Inputs holding independent negative-frequency content are rejected.
    Reducing an already real snapshot returns it unchanged.
    """
    if isinstance(obj, FieldSnapshot):
        if obj.real:
            return obj
        if obj.has_negative_frequency:
            raise ValueError("eps=-1 content is redundant for real fields; build the "
                             "state from positive frequencies only")
        return FieldSnapshot(obj.grid, obj.t, obj.A.real.copy(), obj.E.real.copy(),
                             obj.pi.real.copy(), obj.psi.real.copy(), True, {})
    if isinstance(obj, dict):
        if any(eps == -1 and np.any(v) for (_, eps), v in obj.items()):
            raise ValueError("eps=-1 content is redundant for real fields")
        return sum(v for v in obj.values()).real if obj else 0.0
    arr = np.asarray(obj)
    return arr.real.copy()


def real_psi(state: PhotonState, t: float = 0.0) -> np.ndarray:
    """``psi(x) = Re sum_lam psi_lam^+(x)``."""
    psis = synthesize_psi(state, t)
    if not psis:
        return np.zeros(state.grid.shape)
    return reduce_real(psis)


# -- derivative fields used by the four-current ---------------------------------

def potential_derivatives(state: PhotonState, eps: int, t: float = 0.0) -> dict:
    """``A^eps`` (modes summed) with its spectral derivatives.

    Keys: ``A`` (4,...), ``dct`` = d/d(ct) (4,...), ``grad`` = d/dx_i (3,4,...),
    ``lap`` = Laplacian (4,...), ``dsqrt`` = D^{1/2} A (4,...).
    """
    g = state.grid
    g.require_no_zero_mode("potential_derivatives")
    V = state.vector_coeffs(eps)
    pref = 1j * g.constants.field_prefactor

    def tx(arr):
        return pref * k_to_x(g, arr, MeasureKind.INVARIANT, eps, t)

    out = {"A": tx(V), "dct": tx(-1j * eps * g.kmag * V),
           "lap": tx(-(g.kmag**2) * V), "dsqrt": tx(g.kmag * V)}
    out["grad"] = np.stack([tx(1j * eps * g.kvec[i] * V) for i in range(3)])
    return out


def wave_equation_residual(state: PhotonState) -> float:
    """Largest ``|(omega/c)^2 - |k|^2| |c|`` over nodes relative to ``max |k|^2 |c|``.

    The box operator is diagonal in k-space, so this checks the dispersion used
    by every transform.
    """
    g = state.grid
    disp = (g.omega / g.constants.c) ** 2 - g.kmag**2
    worst, scale = 0.0, 0.0
    for _, c in state.sectors():
        worst = max(worst, float(np.max(np.abs(disp * c))))
        scale = max(scale, float(np.max(g.kmag**2 * np.abs(c))))
    return worst / scale if scale else 0.0


# -- output ------------------------------------------------------------------------

def dump_snapshot(snapshot: FieldSnapshot, directory, prefix: str = "snapshot") -> Path:
    """Binary arrays plus a JSON manifest for every field of ``snapshot``."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    files = {}
    for name, labels in (("A", ["A0", "Ax", "Ay", "Az"]), ("E", ["Ex", "Ey", "Ez"]),
                         ("pi", ["pi0", "pix", "piy", "piz"]), ("psi", ["psi"])):
        path = directory / f"{prefix}_{name}.bin"
        dump_array(path, getattr(snapshot, name), snapshot.grid, labels=labels,
                   t=snapshot.t, real=snapshot.real)
        files[name] = path.name
    manifest = {"t": snapshot.t, "real": snapshot.real, "files": files,
                "grid": snapshot.grid.manifest(),
                "modes": [list(k) for k in snapshot.per_mode]}
    out = directory / f"{prefix}.json"
    out.write_text(json.dumps(manifest, indent=2, sort_keys=True))
    return out


def line_profile(grid: KGrid, values, axis: int = 2, through=(0.0, 0.0, 0.0)):
    """Values along a lattice line parallel to ``axis`` through the node nearest ``through``."""
    values = np.asarray(values)
    idx = [int(np.argmin(np.abs(grid.x_axis - c))) for c in through]
    sl = list(idx)
    sl[axis] = slice(None)
    return grid.x_axis.copy(), values[tuple(sl)]


def write_csv(path, xs, values, header=("x", "value")):
    """CSV rows ``x,value``; complex values get ``re,im`` columns."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    values = np.asarray(values)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        if np.iscomplexobj(values):
            w.writerow([header[0], "re", "im"])
            for x, v in zip(xs, values):
                w.writerow([repr(float(x)), repr(float(v.real)), repr(float(v.imag))])
        else:
            w.writerow(list(header))
            for x, v in zip(xs, values):
                w.writerow([repr(float(x)), repr(float(v))])
    return path


__all__ = [
    "FieldSnapshot", "synthesize", "synthesize_psi", "reduce_real", "real_psi",
    "electric_field", "electric_from_potential", "sector_potential", "sector_electric",
    "potential_derivatives", "wave_equation_residual", "dump_snapshot", "line_profile",
    "write_csv",
]

"""Momentum lattice, its dual position lattice and the Fourier bridges between them.

Every coefficient array lives on a uniform ``n x n x n`` momentum lattice with
nodes ``k_i = dk * (i - n/2 + offset/2)`` per axis.  The dual position lattice
has nodes ``x_j = dx * (j - n/2)`` with ``dx = 2*pi / (n*dk)``.  The transforms
below are exact discrete versions of

.. math::

    f(\\mathbf{x}) = \\int \\frac{d^3k}{(2\\pi)^3} w(k)\\, c(\\mathbf{k})\\,
                   e^{-i\\epsilon(\\omega_k t - \\mathbf{k}\\cdot\\mathbf{x})}

with ``w = 1/(2 omega)`` (invariant measure) or ``w = 1`` (trivial measure).
"""
from __future__ import annotations

import enum
import json
import os
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np
import scipy.fft


@dataclass(frozen=True)
class PhysicalConstants:
    """Speed of light, reduced Planck constant and vacuum permittivity."""

    c: float = 1.0
    hbar: float = 1.0
    eps0: float = 1.0

    def __post_init__(self):
        for name in ("c", "hbar", "eps0"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")

    @property
    def mu0(self) -> float:
        return 1.0 / (self.eps0 * self.c**2)

    @property
    def field_prefactor(self) -> float:
        """sqrt(hbar/eps0), the amplitude scale shared by A, E and pi."""
        return float(np.sqrt(self.hbar / self.eps0))

    @property
    def current_prefactor(self) -> float:
        """g = eps0 c / hbar, the number-density coupling."""
        return self.eps0 * self.c / self.hbar

    def to_dict(self) -> dict:
        return {"c": self.c, "hbar": self.hbar, "eps0": self.eps0}


NATURAL = PhysicalConstants()


class MeasureKind(str, enum.Enum):
    INVARIANT = "invariant"
    TRIVIAL = "trivial"


class ZeroModeError(ValueError):
    """Raised when a 1/omega weight or a k-direction is needed at |k| = 0."""


def _workers() -> int | None:
    env = os.environ.get("MAXWELLQM_THREADS")
    if env:
        return max(1, int(env))
    return None


@dataclass(frozen=True)
class KGrid:
    """Uniform Cartesian momentum lattice.

    Parameters
    ----------
    n : int
        Points per axis (even, >= 4).
    dk : float
        Lattice spacing in 1/length.
    offset : bool
        Shift nodes by half a cell so that no node sits at ``k = 0``.
    constants : PhysicalConstants
        Units; ``omega = c |k|``.
    """

    n: int
    dk: float
    offset: bool = True
    constants: PhysicalConstants = field(default=NATURAL)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 4 or self.n % 2:
            raise ValueError(f"n must be an even integer >= 4, got {self.n}")
        if not self.dk > 0:
            raise ValueError("dk must be positive")

    # -- momentum lattice -------------------------------------------------
    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.n, self.n, self.n)

    @property
    def k_shift(self) -> float:
        """Index offset ``a`` in ``k_i = dk (i + a)``."""
        return -self.n / 2 + (0.5 if self.offset else 0.0)

    @cached_property
    def k_axis(self) -> np.ndarray:
        return self.dk * (np.arange(self.n) + self.k_shift)

    @property
    def k_max(self) -> float:
        return self.n * self.dk / 2

    @cached_property
    def kvec(self) -> np.ndarray:
        """Node wavevectors, shape ``(3, n, n, n)``."""
        kx, ky, kz = np.meshgrid(self.k_axis, self.k_axis, self.k_axis, indexing="ij")
        out = np.stack([kx, ky, kz])
        out.setflags(write=False)
        return out

    @cached_property
    def kmag(self) -> np.ndarray:
        out = np.sqrt(np.sum(self.kvec**2, axis=0))
        out.setflags(write=False)
        return out

    @cached_property
    def omega(self) -> np.ndarray:
        out = self.constants.c * self.kmag
        out.setflags(write=False)
        return out

    @property
    def has_zero_mode(self) -> bool:
        return not self.offset

    @property
    def k_weight(self) -> float:
        """Volume element ``dk^3 / (2 pi)^3`` of one momentum node."""
        return self.dk**3 / (2 * np.pi) ** 3

    # -- position lattice -------------------------------------------------
    @property
    def dx(self) -> float:
        return 2 * np.pi / (self.n * self.dk)

    @property
    def length(self) -> float:
        """Period L = 2 pi / dk of the dual box."""
        return 2 * np.pi / self.dk

    @property
    def x_shift(self) -> float:
        return -self.n / 2

    @cached_property
    def x_axis(self) -> np.ndarray:
        return self.dx * (np.arange(self.n) + self.x_shift)

    @cached_property
    def xvec(self) -> np.ndarray:
        """Dual-lattice positions, shape ``(3, n, n, n)``."""
        out = np.stack(np.meshgrid(self.x_axis, self.x_axis, self.x_axis, indexing="ij"))
        out.setflags(write=False)
        return out

    @property
    def x_weight(self) -> float:
        return self.dx**3

    # -- lookups ----------------------------------------------------------
    def node_index(self, k, tol: float = 1e-9) -> tuple[int, int, int]:
        """Index of the momentum node equal to ``k``; raises if off-lattice."""
        return _lattice_index(k, self.dk, self.k_shift, self.n, tol, "momentum")

    def position_index(self, x, tol: float = 1e-9) -> tuple[int, int, int]:
        return _lattice_index(x, self.dx, self.x_shift, self.n, tol, "position")

    def require_no_zero_mode(self, what: str = "this operation"):
        if self.has_zero_mode:
            raise ZeroModeError(
                f"{what} needs 1/omega or k/|k| at every node; the unshifted grid "
                "contains k = 0, use make_grid(..., offset=True)")

    def manifest(self) -> dict:
        return {
            "n": self.n, "dk": self.dk, "dx": self.dx, "offset": self.offset,
            "k_max": self.k_max, "units": self.constants.to_dict(),
        }


def _lattice_index(v, spacing, shift, n, tol, what):
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"{what} must be a 3-vector")
    f = v / spacing - shift
    idx = np.rint(f)
    if np.any(np.abs(f - idx) > tol) or np.any(idx < 0) or np.any(idx >= n):
        raise ValueError(f"{v} is not a {what} lattice node")
    return tuple(int(i) for i in idx)


def make_grid(n: int, k_max: float, offset: bool = True,
              constants: PhysicalConstants | None = None) -> KGrid:
    """Lattice with ``n`` points per axis covering ``[-k_max, k_max)``."""
    if int(n) != n or n % 2:
        raise ValueError(f"n must be even, got {n}")
    if n < 4:
        raise ValueError(f"n must be >= 4, got {n}")
    if not k_max > 0:
        raise ValueError("k_max must be positive")
    return KGrid(int(n), 2.0 * k_max / n, offset, constants or NATURAL)


def omega_at(grid: KGrid, k) -> float:
    """Frequency ``c |k|`` at a lattice node."""
    grid.node_index(k)
    return grid.constants.c * float(np.linalg.norm(np.asarray(k, dtype=float)))


# -- transforms -------------------------------------------------------------

def _phase(n, sign, index_shift, other_shift=0.0):
    j = np.arange(n)
    return np.exp(sign * 2j * np.pi * (j + other_shift) * index_shift / n)


def _lattice_transform(arr, n, sign, src_shift, dst_shift):
    """``out[j] = sum_i arr[i] exp(sign * 2 pi i (i+src)(j+dst)/n)`` on all three axes."""
    pre = _phase(n, sign, dst_shift)            # exp(s 2pi i * dst / n)
    post = _phase(n, sign, src_shift, dst_shift)  # exp(s 2pi (j + dst) * src / n)
    out = arr * pre[:, None, None] * pre[None, :, None] * pre[None, None, :]
    if sign > 0:
        out = scipy.fft.ifftn(out, axes=(-3, -2, -1), norm="forward", workers=_workers())
    else:
        out = scipy.fft.fftn(out, axes=(-3, -2, -1), norm="backward", workers=_workers())
    return out * post[:, None, None] * post[None, :, None] * post[None, None, :]


def _check_shape(arr, grid):
    arr = np.asarray(arr)
    if arr.shape[-3:] != grid.shape:
        raise ValueError(f"array shape {arr.shape} does not match grid {grid.shape}")
    return arr


def measure_weight(grid: KGrid, measure: MeasureKind | str) -> np.ndarray | float:
    measure = MeasureKind(measure)
    if measure is MeasureKind.TRIVIAL:
        return 1.0
    grid.require_no_zero_mode("the invariant measure")
    return 1.0 / (2.0 * grid.omega)


def k_to_x(grid: KGrid, coeff, measure: MeasureKind | str = MeasureKind.TRIVIAL,
           epsilon: int = 1, t: float = 0.0) -> np.ndarray:
    """Synthesize ``sum_k dk^3/(2pi)^3 w c exp(-i eps (omega t - k.x))`` on the dual lattice.

    Leading axes of ``coeff`` (e.g. vector components) are transformed independently.
    """
    if epsilon not in (1, -1):
        raise ValueError("epsilon must be +1 or -1")
    coeff = _check_shape(coeff, grid)
    w = measure_weight(grid, measure)
    f = coeff * (w * grid.k_weight)
    if t != 0.0:
        f = f * np.exp(-1j * epsilon * grid.omega * t)
    return _lattice_transform(f.astype(complex), grid.n, epsilon, grid.k_shift, grid.x_shift)


def x_to_k(grid: KGrid, field) -> np.ndarray:
    """Inverse of ``k_to_x(grid, ., 'trivial', +1, 0)``: ``dx^3 sum_x f(x) exp(-i k.x)``."""
    field = _check_shape(field, grid)
    out = _lattice_transform(np.asarray(field, dtype=complex), grid.n, -1,
                             grid.x_shift, grid.k_shift)
    return out * grid.x_weight


# -- binary dumps ------------------------------------------------------------

def dump_array(path, arr, grid: KGrid | None = None, labels=None, **extra) -> Path:
    """Write ``arr`` as headerless little-endian float64 plus a JSON sidecar.

    Complex arrays are interleaved ``(re, im)``.  The sidecar lands next to the
    data file as ``<path>.json``.
    """
    path = Path(path)
    arr = np.asarray(arr)
    is_complex = np.iscomplexobj(arr)
    if is_complex:
        raw = np.empty(arr.shape + (2,), dtype="<f8")
        raw[..., 0] = arr.real
        raw[..., 1] = arr.imag
    else:
        raw = arr.astype("<f8")
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(np.ascontiguousarray(raw).tobytes(order="C"))
    manifest = {"shape": list(arr.shape), "complex": bool(is_complex),
                "dtype": "float64-le", "layout": "row-major"}
    if grid is not None:
        manifest.update(grid.manifest())
    if labels is not None:
        manifest["labels"] = list(labels)
    manifest.update(extra)
    Path(str(path) + ".json").write_text(json.dumps(manifest, indent=2, sort_keys=True))
    return path


def load_array(path) -> tuple[np.ndarray, dict]:
    path = Path(path)
    manifest = json.loads(Path(str(path) + ".json").read_text())
    raw = np.frombuffer(path.read_bytes(), dtype="<f8")
    shape = tuple(manifest["shape"])
    if manifest["complex"]:
        raw = raw.reshape(shape + (2,))
        arr = raw[..., 0] + 1j * raw[..., 1]
    else:
        arr = raw.reshape(shape).copy()
    return arr, manifest

"""Slow reference implementations used to certify the vectorized code paths.

Everything here is a plain loop over lattice nodes with its own lattice
coordinates, unit vectors and weights.  Only the raw coefficient arrays and
the grid parameters are read from the objects under test.
"""
from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass


@dataclass(frozen=True)
class OracleResult:
    value: object
    node_count: int
    elapsed: float


_SIGNATURE = (1.0, -1.0, -1.0, -1.0)


def _zeta(mode):
    return -1.0 if mode == 0 else 1.0


def _nodes(grid):
    """Yield ``(index, (kx, ky, kz))`` in C order."""
    n = grid.n
    a = -n / 2 + (0.5 if grid.offset else 0.0)
    axis = [grid.dk * (i + a) for i in range(n)]
    for i in range(n):
        for j in range(n):
            for l in range(n):
                yield (i, j, l), (axis[i], axis[j], axis[l])


def _polarization(k, mode, m):
    """Four-vector of ``mode`` at ``k`` from first principles (time component first)."""
    kx, ky, kz = k
    kk = math.sqrt(kx * kx + ky * ky + kz * kz)
    if mode == 0:
        return (1.0, 0.0, 0.0, 0.0)
    if kk == 0:
        raise ValueError("direction undefined at k = 0")
    rho = math.sqrt(kx * kx + ky * ky)
    th = math.atan2(rho, kz)
    ph = math.atan2(ky, kx)
    if mode == 3:
        return (0.0, kx / kk, ky / kk, kz / kk)
    e_th = (math.cos(th) * math.cos(ph), math.cos(th) * math.sin(ph), -math.sin(th))
    e_ph = (-math.sin(ph), math.cos(ph), 0.0)
    rot = cmath.exp(1j * mode * m * ph) / math.sqrt(2.0)
    return (0.0,) + tuple((e_th[i] + 1j * mode * e_ph[i]) * rot for i in range(3))


def oracle_inner_product(s1, s2) -> OracleResult:
    """``sum_k dk^3/(2pi)^3 sum zeta c1* c2`` with ``1/(2 omega)`` for ``alpha = 1/2``."""
    if (s1.grid.n, s1.grid.dk, s1.grid.offset) != (s2.grid.n, s2.grid.dk, s2.grid.offset):
        raise ValueError("grid mismatch")
    start = time.perf_counter()
    g = s1.grid
    c = g.constants.c
    vol = g.dk ** 3 / (2 * math.pi) ** 3
    nw = s1.alpha == 0.5
    keys = [key for key in s1.coeffs if key in s2.coeffs]
    total = 0j
    count = 0
    for idx, k in _nodes(g):
        w = vol
        if nw:
            w = w / (2 * c * math.sqrt(k[0] ** 2 + k[1] ** 2 + k[2] ** 2))
        for key in keys:
            a = complex(s1.coeffs[key][idx])
            b = complex(s2.coeffs[key][idx])
            total += _zeta(key[0]) * a.conjugate() * b * w
        count += 1
    return OracleResult(total, count, time.perf_counter() - start)


def oracle_norm(state) -> OracleResult:
    r = oracle_inner_product(state, state)
    return OracleResult(r.value.real, r.node_count, r.elapsed)


def oracle_field(state, event) -> OracleResult:
    """Potential, its derivatives and ``psi`` at ``event = (t, x, y, z)`` by direct sum.

    ``value`` is a dict with ``A`` (4 complex), ``dA`` (4x4, ``dA[mu][nu] =
    d_mu A^nu`` with ``d_0 = d/d(ct)``), ``E`` (3 complex), ``pi`` (4 complex)
    and ``psi`` keyed by ``(lam, eps)``.
    """
    start = time.perf_counter()
    g = state.grid
    c, hbar, eps0 = g.constants.c, g.constants.hbar, g.constants.eps0
    amp = math.sqrt(hbar / eps0)
    vol = g.dk ** 3 / (2 * math.pi) ** 3
    t, x = event[0], event[1:]
    A = [0j] * 4
    dA = [[0j] * 4 for _ in range(4)]
    psi = {key: 0j for key in state.coeffs}
    count = 0
    for idx, k in _nodes(g):
        kk = math.sqrt(k[0] ** 2 + k[1] ** 2 + k[2] ** 2)
        kx = k[0] * x[0] + k[1] * x[1] + k[2] * x[2]
        for (mode, eps), arr in state.coeffs.items():
            coeff = complex(arr[idx])
            if coeff == 0:
                continue
            phase = cmath.exp(-1j * eps * (c * kk * t - kx))
            psi[(mode, eps)] += vol * coeff * phase
            pol = _polarization(k, mode, state.m)
            base = 1j * amp * vol * coeff * phase / (2 * c * kk)
            # d_0 -> -i eps |k|, d_i -> +i eps k_i
            factors = (-1j * eps * kk, 1j * eps * k[0], 1j * eps * k[1], 1j * eps * k[2])
            for nu in range(4):
                term = base * pol[nu]
                A[nu] += term
                for mu in range(4):
                    dA[mu][nu] += factors[mu] * term
        count += 1
    E = [-c * dA[0][i + 1] for i in range(3)]
    pi = [-eps0 * c * dA[0][nu] for nu in range(4)]
    value = {"A": A, "dA": dA, "E": E, "pi": pi, "psi": psi}
    return OracleResult(value, count, time.perf_counter() - start)


def oracle_current(state, event) -> OracleResult:
    """``J^mu = -i g [A*_nu d^mu Ac^nu - Ac^nu d^mu A*_nu]`` from per-sign direct sums."""
    start = time.perf_counter()
    g = state.grid
    gc = g.constants.eps0 * g.constants.c / g.constants.hbar
    parts = {}
    for eps in (1, -1):
        sub = {key: v for key, v in state.coeffs.items() if key[1] == eps}
        if sub:
            parts[eps] = oracle_field(_View(state, sub), event).value
    A = [sum(p["A"][nu] for p in parts.values()) for nu in range(4)]
    Ac = [sum(e * p["A"][nu] for e, p in parts.items()) for nu in range(4)]
    dA = [[sum(p["dA"][mu][nu] for p in parts.values()) for nu in range(4)] for mu in range(4)]
    dAc = [[sum(e * p["dA"][mu][nu] for e, p in parts.items()) for nu in range(4)]
           for mu in range(4)]
    J = []
    for mu in range(4):
        # raising mu flips the sign of spatial derivatives
        up = _SIGNATURE[mu]
        acc = 0j
        for nu in range(4):
            acc += _SIGNATURE[nu] * (A[nu].conjugate() * up * dAc[mu][nu]
                                     - Ac[nu] * up * dA[mu][nu].conjugate())
        J.append(-1j * gc * acc)
    value = {"j0": J[0].real, "jvec": [g.constants.c * J[i].real for i in (1, 2, 3)],
             "imag": max(abs(v.imag) for v in J)}
    return OracleResult(value, g.n ** 3, time.perf_counter() - start)


class _View:
    """Minimal stand-in exposing the attributes :func:`oracle_field` reads."""

    def __init__(self, state, coeffs):
        self.grid = state.grid
        self.m = state.m
        self.coeffs = coeffs


__all__ = ["OracleResult", "oracle_inner_product", "oracle_norm", "oracle_field",
           "oracle_current"]

"""Freeze direct-sum oracle values for the 16^3 fixtures into tests/data/.

Run from the repository root::

    python3 scripts/freeze_oracle.py

The fixtures are rebuilt from the parameters stored alongside the values, so
the test suite only needs the JSON file.
"""
import json
import time
from pathlib import Path

import numpy as np

from maxwellqm.grid import make_grid
from maxwellqm.oracle import oracle_current, oracle_field, oracle_inner_product
from maxwellqm.state import PhotonState, enforce_lorenz, gaussian_packet

OUT = Path(__file__).resolve().parents[1] / "tests" / "data" / "oracle_16.json"

GRID = {"n": 16, "k_max": 4.0, "offset": True}
PACKETS = {
    "a": [{"k0": [0.2, 0.12, 0.32], "s": 2.5, "lam": 1, "eps": 1, "center": [0.3, -0.2, 0.1]},
          {"k0": [-0.3, 0.1, 0.05], "s": 2.5, "lam": -1, "eps": -1, "center": None}],
    "b": [{"k0": [0.1, 0.2, 0.28], "s": 2.5, "lam": 1, "eps": 1, "center": None},
          {"k0": [0.0, -0.2, 0.1], "s": 2.5, "lam": -1, "eps": 1, "center": [0.0, 0.5, 0.0]}],
    "nw": [{"k0": [0.2, 0.12, 0.32], "s": 2.5, "lam": 1, "eps": 1, "center": None, "alpha": 0.5},
           {"k0": [0.1, -0.3, 0.0], "s": 2.5, "lam": -1, "eps": 1, "center": None, "alpha": 0.5}],
}
# scalar + longitudinal content with c_0 = c_3
GAUGE = {"k0": [0.2, 0.1, -0.2], "s": 2.5}
DX = np.pi / 4  # dual spacing of the 16^3, k_max = 4 lattice
# the first two events are lattice points; the third is off-lattice
EVENTS = [[0.0, 0.0, 0.0, 0.0], [0.25, DX, -2 * DX, 3 * DX], [-0.4, -3 * DX, 0.5 * DX, 0.3]]


def build(spec, grid):
    out = None
    for p in spec:
        s = gaussian_packet(grid, p["k0"], p["s"], p["lam"], p["eps"], 1, p.get("alpha", 0.0),
                            p["center"])
        out = s if out is None else out + s
    return out


def build_gauge(grid):
    prof = gaussian_packet(grid, GAUGE["k0"], GAUGE["s"]).coeff(1, 1)
    return enforce_lorenz(PhotonState(grid, {(3, 1): prof}, 0.0, 1))


def _c(z):
    return [float(np.real(z)), float(np.imag(z))]


def main():
    g = make_grid(GRID["n"], GRID["k_max"], GRID["offset"])
    states = {name: build(spec, g) for name, spec in PACKETS.items()}
    states["gauge"] = build_gauge(g)
    t0 = time.perf_counter()
    products = {}
    for pair in (("a", "a"), ("a", "b"), ("b", "a"), ("b", "b"), ("nw", "nw"), ("gauge", "gauge")):
        products["|".join(pair)] = _c(oracle_inner_product(states[pair[0]], states[pair[1]]).value)
    fields = {}
    for name in ("a", "b"):
        fields[name] = []
        for ev in EVENTS:
            v = oracle_field(states[name], ev).value
            cur = oracle_current(states[name], ev).value
            fields[name].append({
                "event": ev,
                "A": [_c(z) for z in v["A"]],
                "E": [_c(z) for z in v["E"]],
                "pi": [_c(z) for z in v["pi"]],
                "dA": [[_c(z) for z in row] for row in v["dA"]],
                "psi": {f"{k[0]},{k[1]}": _c(z) for k, z in v["psi"].items()},
                "j0": cur["j0"], "jvec": cur["jvec"], "j_imag": cur["imag"],
            })
    payload = {"grid": GRID, "packets": PACKETS, "gauge": GAUGE, "events": EVENTS,
               "products": products, "fields": fields,
               "elapsed": time.perf_counter() - t0}
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(payload, indent=1))
    print(f"wrote {OUT} in {payload['elapsed']:.1f} s")


if __name__ == "__main__":
    main()

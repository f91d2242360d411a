"""First-quantized photon states on a momentum lattice.

Coefficient functions ``c_lam^eps(k)`` carry the state; the fields, densities
and observables are derived from them through the modules below.
"""
from .grid import KGrid, MeasureKind, PhysicalConstants, ZeroModeError, k_to_x, make_grid, x_to_k
from .operators import apply_position, evolve, helicity_op
from .polarization import frame_table, transverse_unit
from .products import inner_product, inner_product_nw, norm_squared, product
from .state import (NonNormalizableError, PhotonState, circular_state, gaussian_packet,
                    linear_state, localized_state, plane_wave)
from .synthesis import synthesize, synthesize_psi

__version__ = "0.1.0"

__all__ = [
    "KGrid", "MeasureKind", "PhysicalConstants", "ZeroModeError", "make_grid", "k_to_x",
    "x_to_k", "PhotonState", "NonNormalizableError", "plane_wave", "gaussian_packet",
    "localized_state", "circular_state", "linear_state", "frame_table", "transverse_unit",
    "inner_product", "inner_product_nw", "product", "norm_squared", "synthesize",
    "synthesize_psi", "evolve", "helicity_op", "apply_position",
]

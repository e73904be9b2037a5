"""Numerical laboratory for mixed-norm amalgam spaces on sampled grids."""

from ._kernels import active_backend, use_backend
from .amalgam import (
    AlphaNorm,
    RadiusSweep,
    alpha_amalgam_norm,
    discrete_alpha_norm,
    discrete_amalgam_norm,
    embedding_check,
    equivalence_ratio,
    global_amalgam_norm,
    validate_exponents,
)
from .bmo import (
    BallFamily,
    bmo_norm,
    doubling_drift,
    mean_oscillation,
    mixed_bmo_norm,
)
from .grid import (
    FieldSpec,
    Grid,
    GridFunction,
    WindowSpec,
    ball,
    cube,
    make_grid,
    restrict,
    sample,
    window_mask,
)
from .norms import (
    ExponentSystem,
    LatticeArray,
    conjugate,
    mixed_lebesgue_norm,
    mixed_sequence_norm,
    windowed_holder_bound,
)
from .operators import (
    DilationParams,
    RieszParams,
    commutator,
    dilate,
    fractional_integral,
    fractional_maximal,
    heat_kernel_reconstruction,
    riesz_constant,
    st_dilation,
)
from .predual import (
    Block,
    BlockDecomposition,
    characteristic_norm_bounds,
    decomposition_from_json,
    decomposition_to_json,
    duality_check,
    h_norm_upper_bound,
    make_block_decomposition,
    pairing,
    synthesize,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaNorm",
    "BallFamily",
    "Block",
    "BlockDecomposition",
    "DilationParams",
    "ExponentSystem",
    "FieldSpec",
    "Grid",
    "GridFunction",
    "LatticeArray",
    "RadiusSweep",
    "RieszParams",
    "WindowSpec",
    "active_backend",
    "alpha_amalgam_norm",
    "ball",
    "bmo_norm",
    "characteristic_norm_bounds",
    "commutator",
    "conjugate",
    "cube",
    "decomposition_from_json",
    "decomposition_to_json",
    "dilate",
    "discrete_alpha_norm",
    "discrete_amalgam_norm",
    "doubling_drift",
    "duality_check",
    "embedding_check",
    "equivalence_ratio",
    "fractional_integral",
    "fractional_maximal",
    "global_amalgam_norm",
    "h_norm_upper_bound",
    "heat_kernel_reconstruction",
    "make_block_decomposition",
    "make_grid",
    "mean_oscillation",
    "mixed_bmo_norm",
    "mixed_lebesgue_norm",
    "mixed_sequence_norm",
    "pairing",
    "restrict",
    "riesz_constant",
    "sample",
    "st_dilation",
    "synthesize",
    "use_backend",
    "validate_exponents",
    "window_mask",
    "windowed_holder_bound",
]

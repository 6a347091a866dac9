"""Exact constructions and checks for polynomial KZ solutions over F_p."""

from .construct import (
    ExponentData,
    ProblemSpec,
    exponent_data,
    homogeneous_components,
    master_polynomial,
    master_times_weight,
    taylor_solution,
    weighted_master_t_part,
    z_prefactor,
)
from .curves import (
    CurveSpec,
    SurfaceSpec,
    affine_points,
    check_curve_theorem,
    check_surface_theorem,
    curve_integral,
    surface_integral,
)
from .ffpoly import (
    AmbientMismatchError,
    ExponentOverflowError,
    SparsePoly,
    inverse_mod,
    is_prime,
)
from .fpintegral import (
    GammaPartition,
    check_integral_theorem,
    gamma_decomposition_check,
    gamma_partition,
    integrate_fpk,
    power_sum,
    primitive_root,
)
from .sl2rep import (
    WeightVector,
    basis,
    casimir_apply,
    casimir_matrix,
    conformal_block_test,
    gaudin_matrix,
)
from .suite import run_suite
from .verify import (
    CheckReport,
    PreconditionError,
    check_cohomology_k1,
    check_flatness,
    check_kz,
    check_resonance_linear,
    check_singular,
    check_ze_resonance,
)

__all__ = [
    "AmbientMismatchError",
    "CheckReport",
    "CurveSpec",
    "ExponentData",
    "ExponentOverflowError",
    "GammaPartition",
    "PreconditionError",
    "ProblemSpec",
    "SparsePoly",
    "SurfaceSpec",
    "WeightVector",
    "affine_points",
    "basis",
    "casimir_apply",
    "casimir_matrix",
    "check_cohomology_k1",
    "check_curve_theorem",
    "check_flatness",
    "check_integral_theorem",
    "check_kz",
    "check_resonance_linear",
    "check_singular",
    "check_surface_theorem",
    "check_ze_resonance",
    "conformal_block_test",
    "curve_integral",
    "exponent_data",
    "gamma_decomposition_check",
    "gamma_partition",
    "gaudin_matrix",
    "homogeneous_components",
    "integrate_fpk",
    "inverse_mod",
    "is_prime",
    "master_polynomial",
    "master_times_weight",
    "power_sum",
    "primitive_root",
    "run_suite",
    "surface_integral",
    "taylor_solution",
    "weighted_master_t_part",
    "z_prefactor",
]

__version__ = "0.1.0"

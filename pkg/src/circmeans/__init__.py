"""Circular power means of |x + zeta*y| over the unit circle, the bound
chain that proves the sharp complex 2-uniform PL-convexity constant
alpha/2, and deterministic plus Monte Carlo cross-checking backends.
"""

from .bounds import am_gm_sandwich, bernoulli_gap, bernoulli_log_gap, mid_bound, target_bound
from .circle import (
    SeriesTruncation,
    binomial_series_mean,
    inversion_symmetry,
    log_mean,
    mean_quadrature,
    mean_series,
)
from .constants import (
    SharpnessReport,
    Witness,
    best_constant_estimate,
    curvature_gap,
    lambda_profile,
    second_derivative_at_zero,
    sharpness_witness,
    verify_inequality,
)
from .core import (
    BACKEND_AREA_INTEGRAL,
    BACKEND_MC_GREEN,
    BACKEND_MC_OCCUPATION,
    BACKEND_QUADRATURE,
    BACKEND_SERIES,
    BACKENDS,
    DEFAULT_QUAD_TOL,
    DEFAULT_SERIES_TOL,
    BranchRegime,
    McEstimate,
    MeanResult,
    NumericalFailure,
    classify_regime,
    large_branch_threshold,
    rng_from_seed,
)
from .disk import (
    RadialIntegralValue,
    area_integral_mean,
    inner_mean,
    inner_mean_near_one,
    lower_bound_from_area,
    radial_integral_lower,
)
from .stochastic import (
    EXIT_BIAS_COEFF,
    PathConfig,
    green_radius_cdf,
    mc_area_mean,
    occupation_bias_allowance,
    occupation_time_mc,
    sample_green_point,
    sample_green_points,
    variance_flag,
)

__version__ = "0.1.0"

__all__ = [
    "BACKENDS",
    "BACKEND_AREA_INTEGRAL",
    "BACKEND_MC_GREEN",
    "BACKEND_MC_OCCUPATION",
    "BACKEND_QUADRATURE",
    "BACKEND_SERIES",
    "BranchRegime",
    "DEFAULT_QUAD_TOL",
    "DEFAULT_SERIES_TOL",
    "EXIT_BIAS_COEFF",
    "McEstimate",
    "MeanResult",
    "NumericalFailure",
    "PathConfig",
    "RadialIntegralValue",
    "SeriesTruncation",
    "SharpnessReport",
    "Witness",
    "am_gm_sandwich",
    "area_integral_mean",
    "bernoulli_gap",
    "bernoulli_log_gap",
    "best_constant_estimate",
    "binomial_series_mean",
    "classify_regime",
    "curvature_gap",
    "green_radius_cdf",
    "inner_mean",
    "inner_mean_near_one",
    "inversion_symmetry",
    "lambda_profile",
    "large_branch_threshold",
    "log_mean",
    "lower_bound_from_area",
    "mc_area_mean",
    "mean_quadrature",
    "mean_series",
    "mid_bound",
    "occupation_bias_allowance",
    "occupation_time_mc",
    "radial_integral_lower",
    "rng_from_seed",
    "sample_green_point",
    "sample_green_points",
    "second_derivative_at_zero",
    "sharpness_witness",
    "target_bound",
    "variance_flag",
    "verify_inequality",
]

"""Independent component analysis with third and fourth cumulants."""

from ._cumica import (
    Error,
    MomentProfile,
    UnmixingEstimate,
    asv_table,
    check_assumptions,
    cluster_objective,
    contour_grid,
    estimate,
    generate_ic_sample,
    jade_weight_map,
    mdi,
    moment_profile,
    monte_carlo,
    offdiag_criterion,
    optimal_alpha,
    projection_index,
    sample_source,
)

__all__ = [
    "Error",
    "MomentProfile",
    "UnmixingEstimate",
    "asv_table",
    "check_assumptions",
    "cluster_objective",
    "contour_grid",
    "estimate",
    "generate_ic_sample",
    "jade_weight_map",
    "mdi",
    "moment_profile",
    "monte_carlo",
    "offdiag_criterion",
    "optimal_alpha",
    "projection_index",
    "sample_source",
]

"""Lossy BosonSampling: permanents, loss models, and the interpolation reduction."""
from lossyboson.errors import (
    CapExceededError,
    ConfigError,
    IllConditionedError,
    LossyBosonError,
    NormalizationError,
    NumericError,
    ShapeError,
)
from lossyboson.linalg import (
    Seed,
    as_complex_matrix,
    sample_gaussian_matrix,
    sample_haar_unitary,
    scale_bottom_rows,
    scale_right_columns,
    submatrix_st,
)
from lossyboson.optics import (
    GaussianEnsembleSpec,
    LossModel,
    OutcomeDistribution,
    enumerate_states,
    ideal_distribution,
    ideal_outcome_prob,
    kl_numerical,
    kl_scaled_gaussian,
    lossy_distribution,
    phi_dark,
    phi_input_loss,
    phi_shuffle_exact,
    phi_shuffle_mixture,
    pinsker_tv_bound,
    row_norm_correlation,
    row_norm_product,
    sample_outcome,
    sample_outcomes,
    tv_monte_carlo,
)
from lossyboson.permanent import permanent, permanent_naive
from lossyboson.reduction import (
    NoiseSpec,
    build_vandermonde,
    chebyshev_envelope,
    embed,
    epsilon_prime_budget,
    estimate_beta0,
    gautschi_bound,
    interpolation_nodes,
    noisy_phi_oracle,
    recover_permanent_squared,
    variance_bound,
)

__all__ = [
    "CapExceededError",
    "ConfigError",
    "GaussianEnsembleSpec",
    "IllConditionedError",
    "LossModel",
    "LossyBosonError",
    "NoiseSpec",
    "NormalizationError",
    "NumericError",
    "OutcomeDistribution",
    "Seed",
    "ShapeError",
    "as_complex_matrix",
    "build_vandermonde",
    "chebyshev_envelope",
    "embed",
    "enumerate_states",
    "epsilon_prime_budget",
    "estimate_beta0",
    "gautschi_bound",
    "ideal_distribution",
    "ideal_outcome_prob",
    "interpolation_nodes",
    "kl_numerical",
    "kl_scaled_gaussian",
    "lossy_distribution",
    "noisy_phi_oracle",
    "permanent",
    "permanent_naive",
    "phi_dark",
    "phi_input_loss",
    "phi_shuffle_exact",
    "phi_shuffle_mixture",
    "pinsker_tv_bound",
    "recover_permanent_squared",
    "row_norm_correlation",
    "row_norm_product",
    "sample_gaussian_matrix",
    "sample_haar_unitary",
    "sample_outcome",
    "sample_outcomes",
    "scale_bottom_rows",
    "scale_right_columns",
    "submatrix_st",
    "tv_monte_carlo",
    "variance_bound",
]

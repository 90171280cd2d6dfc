from lossyboson.optics.distributions import (
    OutcomeDistribution,
    goodness_of_fit,
    ideal_distribution,
    ideal_outcome_prob,
    lossy_distribution,
    sample_outcome,
    sample_outcomes,
)
from lossyboson.optics.lemma import (
    GaussianEnsembleSpec,
    TVEstimate,
    kl_numerical,
    kl_scaled_gaussian,
    max_c_offset,
    pinsker_tv_bound,
    tv_monte_carlo,
)
from lossyboson.optics.loss import (
    LossModel,
    phi_dark,
    phi_for_model,
    phi_input_loss,
    phi_shuffle_exact,
    phi_shuffle_mixture,
    row_norm_correlation,
    row_norm_product,
)
from lossyboson.optics.states import enumerate_states

__all__ = [
    "GaussianEnsembleSpec",
    "LossModel",
    "OutcomeDistribution",
    "TVEstimate",
    "enumerate_states",
    "goodness_of_fit",
    "ideal_distribution",
    "ideal_outcome_prob",
    "kl_numerical",
    "kl_scaled_gaussian",
    "lossy_distribution",
    "max_c_offset",
    "phi_dark",
    "phi_for_model",
    "phi_input_loss",
    "phi_shuffle_exact",
    "phi_shuffle_mixture",
    "pinsker_tv_bound",
    "row_norm_correlation",
    "row_norm_product",
    "sample_outcome",
    "sample_outcomes",
    "tv_monte_carlo",
]

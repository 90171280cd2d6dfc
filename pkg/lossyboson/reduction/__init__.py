from lossyboson.reduction.interpolation import (
    NodeSet,
    VarianceBound,
    build_vandermonde,
    chebyshev_envelope,
    epsilon_prime_budget,
    estimate_beta0,
    gautschi_bound,
    interpolation_nodes,
    nodes_on_interval,
    vandermonde_closed_form_bound,
    vandermonde_inverse_norm,
    variance_bound,
)
from lossyboson.reduction.oracle import NoiseSpec, noisy_phi_oracle, oracle_error
from lossyboson.reduction.pipeline import ReductionReport, embed, recover_permanent_squared

__all__ = [
    "NodeSet",
    "NoiseSpec",
    "ReductionReport",
    "VarianceBound",
    "build_vandermonde",
    "chebyshev_envelope",
    "embed",
    "epsilon_prime_budget",
    "estimate_beta0",
    "gautschi_bound",
    "interpolation_nodes",
    "noisy_phi_oracle",
    "nodes_on_interval",
    "oracle_error",
    "recover_permanent_squared",
    "vandermonde_closed_form_bound",
    "vandermonde_inverse_norm",
    "variance_bound",
]

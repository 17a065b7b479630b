"""Python bindings for the coopber C++ core."""

from ._coopber import (
    BerEstimate,
    EstimateKind,
    NumericalError,
    SystemConfig,
    ThresholdOptimum,
    find_gamma_opt,
    measure_conditional_psr,
    mgf_best_relay,
    p_coop,
    p_e2e,
    p_non_coop,
    p_prop_closed,
    p_prop_oracle,
    p_sr,
    q_function,
    run_sim,
    scenario,
)

__all__ = [
    "BerEstimate",
    "EstimateKind",
    "NumericalError",
    "SystemConfig",
    "ThresholdOptimum",
    "find_gamma_opt",
    "measure_conditional_psr",
    "mgf_best_relay",
    "p_coop",
    "p_e2e",
    "p_non_coop",
    "p_prop_closed",
    "p_prop_oracle",
    "p_sr",
    "q_function",
    "run_sim",
    "scenario",
]

from src.experiments.acceptance import (
    AcceptanceConfig,
    AcceptanceRecord,
    AcceptanceReport,
    run_acceptance,
)
from src.experiments.coefficients import (
    AbarFacts,
    PhiGrid,
    abar_facts,
    chi2_target_coeffs,
    interaction_matrix,
    quad_clt_coeffs,
    quad_clt_facts,
    row_logsum_check,
)
from src.experiments.drivers import (
    ExperimentConfig,
    ExperimentResult,
    get_experiment_runners,
    i2_phi_reference,
    load_experiment_config,
    run_chi2,
    run_experiment,
    run_quadratic_clt,
    run_variance_experiment,
    variance_estimator_parts,
    variance_estimator_sample,
)
from src.experiments.phi import (
    c_star,
    phi_closed,
    phi_family,
    phi_quadrature,
    riemann_error_bound,
    riemann_phi,
    riemann_violations,
    theta,
)

__all__ = [
    "AbarFacts",
    "AcceptanceConfig",
    "AcceptanceRecord",
    "AcceptanceReport",
    "ExperimentConfig",
    "ExperimentResult",
    "PhiGrid",
    "abar_facts",
    "c_star",
    "chi2_target_coeffs",
    "get_experiment_runners",
    "i2_phi_reference",
    "interaction_matrix",
    "load_experiment_config",
    "phi_closed",
    "phi_family",
    "phi_quadrature",
    "quad_clt_coeffs",
    "quad_clt_facts",
    "riemann_error_bound",
    "riemann_phi",
    "riemann_violations",
    "row_logsum_check",
    "run_acceptance",
    "run_chi2",
    "run_experiment",
    "run_quadratic_clt",
    "run_variance_experiment",
    "theta",
    "variance_estimator_parts",
    "variance_estimator_sample",
]

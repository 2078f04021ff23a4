from src.coeffs.contraction import (
    ContractionTable,
    KappaConvention,
    SymmetricTable,
    contraction,
    contraction_matrix,
    kappa_chi2,
    symmetrize_contraction,
    theta_n,
)
from src.coeffs.family import CoefficientFamily, eval_coeff, factorial
from src.coeffs.functionals import (
    CoeffStats,
    coeff_stats,
    influence,
    level_norm,
    lift_cj,
    nq_weight,
    nq_weight_ceiling,
    total_influence,
    total_norm,
)
from src.coeffs.io import load_coefficients, save_coefficients
from src.coeffs.multi_index import DIAGONAL, MultiIndex, canonicalize

__all__ = [
    "DIAGONAL",
    "CoeffStats",
    "CoefficientFamily",
    "ContractionTable",
    "KappaConvention",
    "MultiIndex",
    "SymmetricTable",
    "canonicalize",
    "coeff_stats",
    "contraction",
    "contraction_matrix",
    "eval_coeff",
    "factorial",
    "influence",
    "kappa_chi2",
    "level_norm",
    "lift_cj",
    "load_coefficients",
    "nq_weight",
    "nq_weight_ceiling",
    "save_coefficients",
    "symmetrize_contraction",
    "theta_n",
    "total_influence",
    "total_norm",
]

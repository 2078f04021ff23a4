from src.distances.dictionary import (
    TestFunction,
    default_dictionary,
    dk_lower,
    normalized,
    renormalized,
    sobolev_sup_norm,
)
from src.distances.kde import gamma_kernel, smoothed_densities, tv_kde
from src.distances.kolmogorov import (
    dkw_threshold,
    kolmogorov_two_sample,
    kolmogorov_vs_cdf,
    ks_two_sample_test,
    two_sample_threshold,
)
from src.distances.report import DistanceReport, bootstrap_interval

__all__ = [
    "DistanceReport",
    "TestFunction",
    "bootstrap_interval",
    "default_dictionary",
    "dk_lower",
    "dkw_threshold",
    "gamma_kernel",
    "kolmogorov_two_sample",
    "kolmogorov_vs_cdf",
    "ks_two_sample_test",
    "normalized",
    "renormalized",
    "smoothed_densities",
    "sobolev_sup_norm",
    "tv_kde",
    "two_sample_threshold",
]

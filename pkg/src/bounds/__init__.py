from src.bounds.chi2 import chi2_bound, chi2_tv_template, k1, quad_clt_templates
from src.bounds.constants import (
    BoundReport,
    UniversalConstants,
    c_big,
    c_small,
    load_constants,
)
from src.bounds.invariance import (
    d0_optimized_template,
    distances2_template,
    dk_to_d0_exponents,
    dk_to_d0_template,
    regularization_template,
    smooth_invariance_bound,
    tv_invariance_exponents,
    tv_invariance_template,
)
from src.bounds.small_ball import (
    HoeffdingTail,
    cw_tail_template,
    hoeffding_tail,
    hoeffding_threshold,
    small_ball_hoeffding_tail,
)
from src.bounds.suite import evaluate_bounds

__all__ = [
    "BoundReport",
    "HoeffdingTail",
    "UniversalConstants",
    "c_big",
    "c_small",
    "chi2_bound",
    "chi2_tv_template",
    "cw_tail_template",
    "d0_optimized_template",
    "distances2_template",
    "dk_to_d0_exponents",
    "dk_to_d0_template",
    "evaluate_bounds",
    "hoeffding_tail",
    "hoeffding_threshold",
    "k1",
    "load_constants",
    "quad_clt_templates",
    "regularization_template",
    "small_ball_hoeffding_tail",
    "smooth_invariance_bound",
    "tv_invariance_exponents",
    "tv_invariance_template",
]

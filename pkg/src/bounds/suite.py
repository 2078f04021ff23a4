from __future__ import annotations

import logging
from typing import List, Optional

from src.bounds.chi2 import chi2_bound, chi2_tv_template
from src.bounds.constants import BoundReport, UniversalConstants, c_big, c_small
from src.bounds.invariance import smooth_invariance_bound, tv_invariance_template
from src.bounds.small_ball import (
    cw_tail_template,
    hoeffding_tail,
    hoeffding_threshold,
    small_ball_hoeffding_tail,
)
from src.coeffs.family import CoefficientFamily
from src.coeffs.functionals import level_norm
from src.laws.bump import mass_m

logger = logging.getLogger(__name__)


def evaluate_bounds(
    c: CoefficientFamily,
    consts: Optional[UniversalConstants] = None,
    r: float = 0.25,
    epsilon: float = 0.2,
    eta: float = 1e-2,
    m: Optional[int] = None,
    m3: float = 1.0,
    p_chi: Optional[float] = None,
) -> List[BoundReport]:
    """Every bound that applies to c, in a fixed order."""
    consts = consts or UniversalConstants()
    n = c.degree
    p = epsilon * mass_m(r) if p_chi is None else p_chi
    common = {"N": n, "r": r, "epsilon": epsilon}
    source = consts.source

    def explicit(name: str, value: float, **inputs) -> BoundReport:
        return BoundReport(name, value, {**common, **inputs})

    def template(name: str, value: float, **inputs) -> BoundReport:
        return BoundReport(
            name, value, {**common, **inputs}, template=True, constants_source=source
        )

    reports = [
        explicit("c_small", c_small(n, r, epsilon)),
        template("c_big", c_big(n, r, epsilon, consts)),
        explicit("smooth_invariance", smooth_invariance_bound(c, n, m3), M3=m3, f3norm=1.0),
    ]
    threshold = hoeffding_threshold(c, p, n)
    tail = hoeffding_tail(c, 0.5 * threshold, p, n)
    reports.append(explicit("hoeffding_threshold", threshold, p_chi=p))
    reports.append(
        BoundReport(
            "hoeffding_tail",
            tail.value,
            {**common, "p_chi": p, "x": 0.5 * threshold},
            flags={"h2_satisfied": tail.valid},
        )
    )
    reports.append(explicit("small_ball_hoeffding_tail", small_ball_hoeffding_tail(c, r, epsilon)))

    if level_norm(c, n) == 0.0:
        logger.warning(f"|c|_{n} = 0; skipping the templates that divide by it")
        return reports
    reports.append(template("cw_tail", cw_tail_template(c, eta, n, consts, r, epsilon), eta=eta))
    reports.append(template("tv_invariance", tv_invariance_template(c, n, consts, r, epsilon)))
    if m is not None:
        if n % 2 or any(len(key) != n for key in c.entries):
            logger.warning("chi-squared bounds need an even degree with only top-level entries")
        else:
            reports.append(explicit("chi2_d1", chi2_bound(c, m, n), m=m))
            reports.append(
                template("chi2_tv", chi2_tv_template(c, m, n, consts, r, epsilon), m=m)
            )
    return reports

"""Distance from an even-degree series to the centred chi-squared law F(m)."""
from __future__ import annotations

import logging
import math
from typing import Dict, Optional

from src.bounds.constants import UniversalConstants, c_big
from src.bounds.invariance import decay_term, resolve_level, top_norm
from src.coeffs.contraction import KappaConvention, kappa_chi2
from src.coeffs.family import CoefficientFamily
from src.coeffs.functionals import total_norm
from src.errors import ArgumentError

logger = logging.getLogger(__name__)


def k1(m: int) -> float:
    """K_1(m) = max(sqrt(pi/m), 1/(2m) + 1/(2m^2))."""
    if m < 1:
        raise ArgumentError(f"degrees of freedom must be >= 1, got {m}")
    return max(math.sqrt(math.pi / m), 0.5 / m + 0.5 / (m * m))


def chi2_bound(
    c: CoefficientFamily,
    m: int,
    n: Optional[int] = None,
    convention: KappaConvention = KappaConvention.AS_STATED,
) -> float:
    """K_1(m) kappa_{m,N}(c)^{1/2}, an upper bound on d_1 to F(m)."""
    n = c.degree if n is None else n
    if n % 2:
        raise ArgumentError(f"the chi-squared bound needs an even N, got {n}")
    return k1(m) * math.sqrt(kappa_chi2(c, m, n, convention))


def chi2_tv_template(
    c: CoefficientFamily,
    m: int,
    n: Optional[int] = None,
    consts: Optional[UniversalConstants] = None,
    r: float = 0.25,
    epsilon: float = 0.2,
    convention: KappaConvention = KappaConvention.AS_STATED,
) -> float:
    consts = consts or UniversalConstants()
    n = resolve_level(c, n)
    top = max(n, 2)
    spread = consts.p_star * top
    kappa = kappa_chi2(c, m, n, convention)
    shape = kappa ** (1.0 / (4.0 + 2.0 * spread)) / top_norm(c, n) ** (
        2.0 * spread / (n * (2.0 + spread))
    )
    return (
        c_big(top, r, epsilon, consts)
        * (1.0 + total_norm(c, n))
        * (shape + decay_term(c, n, r, epsilon, bar=True))
    )


def quad_clt_templates(
    n: int,
    consts: Optional[UniversalConstants] = None,
    r: float = 0.25,
    epsilon: float = 0.2,
) -> Dict[str, float]:
    """Rate shapes of the quadratic CLT and the variance estimator, scaled by C_2(r, eps)."""
    consts = consts or UniversalConstants()
    if n < 3:
        raise ArgumentError(f"n must be >= 3, got {n}")
    scale = c_big(2, r, epsilon, consts)
    log_n = math.log(n)
    return {
        "invariance": scale * n ** (-1.0 / (4.0 + 6.0 * consts.p_star)),
        "gaussian_limit": scale / log_n,
        "variance_estimator": scale * (log_n**2 / n) ** (1.0 / (4.0 * (1.0 + 2.0 * consts.p_star))),
    }

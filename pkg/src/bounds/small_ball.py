"""Small-ball bounds: the iterated Hoeffding inequality and the P(lambda_N <= eta) template.

The Hoeffding pieces concern S_N(c^2, chi), the series of squared coefficients
in Bernoulli(p) indicators. Callers pass c; the threshold and the tail are
stated through ||c||_N and delta_bar_N(c).
"""
from __future__ import annotations

import logging
import math
from typing import NamedTuple, Optional

from src.bounds.constants import UniversalConstants, c_big
from src.bounds.invariance import decay_term, resolve_level, top_norm
from src.coeffs.family import CoefficientFamily
from src.coeffs.functionals import influence, level_norm, total_influence, total_norm
from src.errors import ArgumentError
from src.laws.bump import mass_m

logger = logging.getLogger(__name__)

HOEFFDING_FACTOR = 2.0 * math.e**3 / 9.0


class HoeffdingTail(NamedTuple):
    value: float
    valid: bool


def _check_p(p_chi: float) -> None:
    if not 0.0 < p_chi < 1.0:
        raise ArgumentError(f"p_chi must lie in (0, 1), got {p_chi}")


def hoeffding_threshold(c: CoefficientFamily, p_chi: float, n: Optional[int] = None) -> float:
    """Largest x for which the tail bound applies: (p/4)^{2N} ||c||_N^2."""
    _check_p(p_chi)
    n = resolve_level(c, n)
    return (p_chi / 4.0) ** (2 * n) * total_norm(c, n) ** 2


def hoeffding_tail(
    c: CoefficientFamily, x: float, p_chi: float, n: Optional[int] = None
) -> HoeffdingTail:
    """(2e^3/9) N exp(-x^2 / (N delta_bar_N^2 ||c||_N^2)), bounding P(S_N(c^2, chi) <= x).

    Outside the threshold the value is still returned, flagged invalid.
    """
    _check_p(p_chi)
    n = resolve_level(c, n)
    if x < 0.0:
        raise ArgumentError(f"x must be >= 0, got {x}")
    scale = n * total_influence(c, n) ** 2 * total_norm(c, n) ** 2
    exponent = x * x / scale if scale > 0.0 else (0.0 if x == 0.0 else math.inf)
    value = HOEFFDING_FACTOR * n * math.exp(-exponent)
    valid = x <= hoeffding_threshold(c, p_chi, n)
    if not valid:
        logger.warning(f"x={x:.4g} exceeds the Hoeffding threshold; tail value is not a bound")
    return HoeffdingTail(value, valid)


def small_ball_hoeffding_tail(
    c: CoefficientFamily, r: float, epsilon: float, n: Optional[int] = None
) -> float:
    """The explicit exponential piece of the small-ball bound, with p = eps m(r)."""
    n = resolve_level(c, n)
    delta = influence(c, n)
    norm_sq = level_norm(c, n) ** 2
    if delta == 0.0:
        return 0.0 if norm_sq > 0.0 else HOEFFDING_FACTOR * n
    p = epsilon * mass_m(r)
    rate = (p / 4.0) ** (4 * n) * norm_sq / (4.0 * n * delta * delta)
    return HOEFFDING_FACTOR * n * math.exp(-rate)


def cw_tail_template(
    c: CoefficientFamily,
    eta: float,
    n: Optional[int] = None,
    consts: Optional[UniversalConstants] = None,
    r: float = 0.25,
    epsilon: float = 0.2,
) -> float:
    """C_N(r, eps) ((eta / |c|_N^2)^{1/N} + exp(-c_N(r, eps) |c|_N^2 / delta_N^2))."""
    consts = consts or UniversalConstants()
    n = resolve_level(c, n)
    if eta < 0.0:
        raise ArgumentError(f"eta must be >= 0, got {eta}")
    norm_sq = top_norm(c, n) ** 2
    return c_big(n, r, epsilon, consts) * (
        (eta / norm_sq) ** (1.0 / n) + decay_term(c, n, r, epsilon)
    )

"""Invariance and distance-comparison bounds.

smooth_invariance_bound has explicit constants. Everything else is a
template in the universal constants of UniversalConstants.
"""
from __future__ import annotations

import logging
import math
from typing import Optional, Tuple

from src.bounds.constants import UniversalConstants, c_big, c_small
from src.coeffs.family import CoefficientFamily, factorial
from src.coeffs.functionals import influence, level_norm, total_influence, total_norm
from src.errors import ArgumentError

logger = logging.getLogger(__name__)


def resolve_level(c: CoefficientFamily, n: Optional[int]) -> int:
    level = c.degree if n is None else n
    if not 1 <= level <= c.degree:
        raise ArgumentError(f"N={level} outside [1, {c.degree}]")
    return level


def top_norm(c: CoefficientFamily, n: int) -> float:
    norm = level_norm(c, n)
    if norm == 0.0:
        raise ArgumentError(f"|c|_{n} = 0: the template exponents are undefined")
    return norm


def decay_term(
    c: CoefficientFamily, n: int, r: float, epsilon: float, bar: bool = False
) -> float:
    """exp(-c_N(r, eps) |c|_N^2 / delta^2), delta the top-level or the total influence."""
    delta = total_influence(c, n) if bar else influence(c, n)
    norm_sq = level_norm(c, n) ** 2
    if delta == 0.0:
        return 0.0 if norm_sq > 0.0 else 1.0
    return math.exp(-c_small(n, r, epsilon) * norm_sq / (delta * delta))


def smooth_invariance_bound(
    c: CoefficientFamily, n: Optional[int] = None, m3: float = 1.0, f3norm: float = 1.0
) -> float:
    """((N+1)!)^2 M_3^{4N} ||f'''|| ||c||_N delta_bar_N(c) for f in C_b^3."""
    n = resolve_level(c, n)
    if m3 < 1.0:
        raise ArgumentError(f"third-moment bound must be >= 1, got {m3}")
    if f3norm < 0.0:
        raise ArgumentError(f"||f'''|| must be >= 0, got {f3norm}")
    return (
        factorial(n + 1) ** 2 * m3 ** (4 * n) * f3norm * total_norm(c, n) * total_influence(c, n)
    )


def tv_invariance_exponents(n: int, p_star: float) -> Tuple[float, float]:
    """(power of delta_bar, power of |c|_N) in the total-variation invariance template."""
    denom = 4.0 + 3.0 * p_star * n
    return 1.0 / denom, 6.0 * p_star / denom


def tv_invariance_template(
    c: CoefficientFamily,
    n: Optional[int] = None,
    consts: Optional[UniversalConstants] = None,
    r: float = 0.25,
    epsilon: float = 0.2,
) -> float:
    consts = consts or UniversalConstants()
    n = resolve_level(c, n)
    norm = top_norm(c, n)
    a, b = tv_invariance_exponents(n, consts.p_star)
    shape = total_influence(c, n) ** a / norm**b
    return (
        c_big(n + 1, r, epsilon, consts)
        * (1.0 + total_norm(c, n))
        * (shape + decay_term(c, n, r, epsilon, bar=True))
    )


def regularization_template(
    c: CoefficientFamily,
    eta: float,
    delta: float,
    small_ball: float,
    n: Optional[int] = None,
    consts: Optional[UniversalConstants] = None,
    r: float = 0.25,
    epsilon: float = 0.2,
) -> float:
    """Cost of smoothing a bounded f with gamma_delta, for ||f||_inf = 1."""
    consts = consts or UniversalConstants()
    n = resolve_level(c, n)
    if eta <= 0.0 or delta <= 0.0:
        raise ArgumentError(f"eta and delta must be positive, got {eta}, {delta}")
    if not 0.0 <= small_ball <= 1.0:
        raise ArgumentError(f"small-ball probability must lie in [0, 1], got {small_ball}")
    return (
        c_big(n, r, epsilon, consts)
        * total_norm(c, n)
        * (small_ball + math.sqrt(delta) / eta**consts.p_star)
    )


def dk_to_d0_exponents(k: int, p_star: float) -> Tuple[float, float]:
    """(power of d_k, power of eta) in the d_k-to-d_0 transfer."""
    if k < 0:
        raise ArgumentError(f"k must be >= 0, got {k}")
    return 1.0 / (k + 1), -k * p_star / (k + 1)


def dk_to_d0_template(
    c: CoefficientFamily,
    cbar: CoefficientFamily,
    k: int,
    eta: float,
    d_k: float,
    small_ball: float,
    small_ball_bar: float,
    n: Optional[int] = None,
    m: Optional[int] = None,
    consts: Optional[UniversalConstants] = None,
    r: float = 0.25,
    epsilon: float = 0.2,
) -> float:
    """d_0 between two series from a d_k estimate and both small-ball probabilities."""
    consts = consts or UniversalConstants()
    n, m = resolve_level(c, n), resolve_level(cbar, m)
    if eta <= 0.0:
        raise ArgumentError(f"eta must be positive, got {eta}")
    if d_k < 0.0:
        raise ArgumentError(f"d_k estimate must be >= 0, got {d_k}")
    dk_pow, eta_pow = dk_to_d0_exponents(k, consts.p_star)
    transfer = eta**eta_pow * d_k**dk_pow
    return (
        c_big(max(n, m), r, epsilon, consts)
        * (1.0 + total_norm(c, n) + total_norm(cbar, m))
        * (transfer + small_ball + small_ball_bar)
    )


def d0_optimized_template(
    c: CoefficientFamily,
    cbar: CoefficientFamily,
    k: int,
    d_k: float,
    n: Optional[int] = None,
    m: Optional[int] = None,
    consts: Optional[UniversalConstants] = None,
    r: float = 0.25,
    epsilon: float = 0.2,
) -> float:
    """d_k-to-d_0 transfer with eta optimised and the small-ball terms bounded."""
    consts = consts or UniversalConstants()
    n, m = resolve_level(c, n), resolve_level(cbar, m)
    if d_k < 0.0:
        raise ArgumentError(f"d_k estimate must be >= 0, got {d_k}")
    top = max(n, m)
    spread = k * consts.p_star * top
    floor = min(top_norm(c, n) ** (2.0 / n), top_norm(cbar, m) ** (2.0 / m))
    shape = d_k ** (1.0 / (k + 1 + spread)) / floor ** (spread / (k + 1 + spread))
    return (
        c_big(top, r, epsilon, consts)
        * (1.0 + total_norm(c, n) + total_norm(cbar, m))
        * (shape + decay_term(c, n, r, epsilon) + decay_term(cbar, m, r, epsilon))
    )


def distances2_template(
    c: CoefficientFamily,
    m: int,
    d_1: float,
    limsup_norm: float,
    liminf_norm: float,
    n: Optional[int] = None,
    consts: Optional[UniversalConstants] = None,
    r: float = 0.25,
    epsilon: float = 0.2,
) -> float:
    """d_0 from S_N(c, Z) to a limit X of degree-M series, given d_1 and the norm limits.

    limsup_norm and liminf_norm are limsup ||c_n||_M and liminf |c_n|_M along the
    approximating sequence; only the caller knows that sequence.
    """
    consts = consts or UniversalConstants()
    n = resolve_level(c, n)
    if m < 1:
        raise ArgumentError(f"M must be >= 1, got {m}")
    if liminf_norm <= 0.0 or limsup_norm < liminf_norm:
        raise ArgumentError(
            f"need 0 < liminf |c_n|_M <= limsup ||c_n||_M, got {liminf_norm}, {limsup_norm}"
        )
    if d_1 < 0.0:
        raise ArgumentError(f"d_1 estimate must be >= 0, got {d_1}")
    top = max(n, m)
    spread = consts.p_star * top
    floor = min(top_norm(c, n) ** (2.0 / n), liminf_norm ** (2.0 / m))
    shape = d_1 ** (1.0 / (2.0 + spread)) / floor ** (spread / (2.0 + spread))
    return (
        c_big(top, r, epsilon, consts)
        * (1.0 + total_norm(c, n) + limsup_norm)
        * (shape + decay_term(c, n, r, epsilon))
    )

"""The plateau bump psi_r, its mass m(r) and variance v(r), and the bump law.

psi_r(s) is 1 on [0, r], decays smoothly as exp(1 - 1/(1 - (s/r - 1)^2)) on
(r, 2r) and vanishes beyond 2r. It is always applied to a squared distance,
so z -> psi_r(|z - z_k|^2) is supported on [z_k - sqrt(2r), z_k + sqrt(2r)]
with breakpoints at distance sqrt(r) and sqrt(2r).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Tuple

import numpy as np
from scipy import integrate

from src.config import settings
from src.errors import ArgumentError, NumericError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BumpSpec:
    r: float

    def __post_init__(self) -> None:
        if not 0.0 < self.r < 1.0:
            raise ArgumentError(f"bump radius must lie in (0, 1), got {self.r}")


def psi(r: float, s):
    """psi_r(s) for any radius r > 0; vectorised over s."""
    if r <= 0.0:
        raise ArgumentError(f"bump radius must be positive, got {r}")
    s_arr = np.asarray(s, dtype=float)
    if np.any(s_arr < 0.0):
        raise ArgumentError("psi_r is defined for s >= 0")
    out = np.where(s_arr <= r, 1.0, 0.0)
    ramp = (s_arr > r) & (s_arr < 2.0 * r)
    if np.any(ramp):
        u = s_arr[ramp] / r - 1.0
        with np.errstate(divide="ignore", over="ignore"):
            out[ramp] = np.exp(1.0 - 1.0 / np.maximum(1.0 - u * u, 0.0))
    return float(out) if out.ndim == 0 else out


def psi_r(spec: BumpSpec, s):
    return psi(spec.r, s)


def checked_quad(fn: Callable[[float], float], a: float, b: float, **kwargs) -> float:
    """scipy quad that raises NumericError instead of warning on non-convergence."""
    kwargs.setdefault("epsabs", settings.QUAD_EPSABS)
    kwargs.setdefault("epsrel", 1e-10)
    kwargs.setdefault("limit", 200)
    result = integrate.quad(fn, a, b, full_output=1, **kwargs)
    if len(result) > 3:
        raise NumericError(f"quadrature on [{a}, {b}] did not converge: {result[3]}")
    return float(result[0])


def _ramp_moment(r: float, power: int) -> float:
    """Integral of z^power psi_r(z^2) over the ramp [sqrt(r), sqrt(2r)]."""
    return checked_quad(
        lambda z: z**power * psi(r, z * z), math.sqrt(r), math.sqrt(2.0 * r)
    )


@lru_cache(maxsize=256)
def _mass(r: float) -> float:
    return 2.0 * (math.sqrt(r) + _ramp_moment(r, 0))


@lru_cache(maxsize=256)
def _second_moment(r: float) -> float:
    return 2.0 * (r**1.5 / 3.0 + _ramp_moment(r, 2))


def mass_m(r: float) -> float:
    """m(r) = integral of psi_r(|z|^2) over the line."""
    if r <= 0.0:
        raise ArgumentError(f"bump radius must be positive, got {r}")
    return _mass(float(r))


def variance_v(r: float) -> float:
    """v(r) = m(r)^{-1} times the integral of z^2 psi_r(|z|^2)."""
    if r <= 0.0:
        raise ArgumentError(f"bump radius must be positive, got {r}")
    return _second_moment(float(r)) / _mass(float(r))


def bump_density(r: float, z, center: float = 0.0):
    """Density m(r)^{-1} psi_r(|z - center|^2): the law of the split component U."""
    z_arr = np.asarray(z, dtype=float)
    return psi(r, (z_arr - center) ** 2) / mass_m(r)


def bump_support(r: float, center: float = 0.0) -> Tuple[float, float]:
    half = math.sqrt(2.0 * r)
    return center - half, center + half


def sample_bump(
    rng: np.random.Generator, size: int, r: float, center: float = 0.0, budget: int | None = None
) -> np.ndarray:
    """Rejection sampler: uniform proposals on the support, accepted with probability psi_r."""
    budget = budget or settings.REJECTION_BUDGET
    lo, hi = bump_support(r, center)
    out = np.empty(size)
    pending = np.arange(size)
    rounds = 0
    while pending.size:
        rounds += 1
        if rounds > budget:
            raise NumericError(f"bump sampler exceeded {budget} proposals per draw")
        proposal = rng.uniform(lo, hi, pending.size)
        accept = rng.random(pending.size) < psi(r, (proposal - center) ** 2)
        out[pending[accept]] = proposal[accept]
        pending = pending[~accept]
    return out

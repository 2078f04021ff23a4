"""The kernel phi(x, y) = int_0^1 dz / sqrt(|x - z| |y - z|) and its approximations.

phi has a closed form, an adaptive-quadrature evaluation (used as an oracle for
the closed form) and a Riemann-sum approximation on the grid x_k = k / n with
an explicit error bound.
"""
from __future__ import annotations

import functools
import logging
import math
from typing import Tuple

import numpy as np
from scipy import integrate

from src.coeffs.family import CoefficientFamily
from src.errors import ArgumentError, NumericError, SingularInputError
from src.laws.bump import checked_quad

logger = logging.getLogger(__name__)


def _check_unit(x, name: str) -> None:
    if np.any((np.asarray(x) <= 0.0) | (np.asarray(x) > 1.0)):
        raise ArgumentError(f"{name} must lie in (0, 1]")


def phi_closed(x, y):
    """pi + 2 ln((sqrt(1-x) + sqrt(1-y)) / |sqrt(x) - sqrt(y)|), vectorised."""
    _check_unit(x, "x")
    _check_unit(y, "y")
    x_arr = np.asarray(x, dtype=float)
    y_arr = np.asarray(y, dtype=float)
    if np.any(x_arr == y_arr):
        raise SingularInputError("phi is singular on the diagonal x = y")
    num = np.sqrt(1.0 - x_arr) + np.sqrt(1.0 - y_arr)
    den = np.abs(np.sqrt(x_arr) - np.sqrt(y_arr))
    out = math.pi + 2.0 * np.log(num / den)
    return float(out) if out.ndim == 0 else out


def theta(x: float, y: float, z):
    """The integrand 1 / sqrt(|x - z| |y - z|)."""
    z = np.asarray(z, dtype=float)
    return 1.0 / np.sqrt(np.abs(x - z) * np.abs(y - z))


def phi_quadrature(x: float, y: float, tol: float = 1e-10) -> float:
    """phi by QAWS quadrature on four pieces, one square-root endpoint singularity each."""
    _check_unit(x, "x")
    _check_unit(y, "y")
    if x == y:
        raise SingularInputError("phi is singular on the diagonal x = y")
    x, y = min(x, y), max(x, y)
    mid = 0.5 * (x + y)
    eps = tol / 4.0

    def left(z: float) -> float:
        return 1.0 / math.sqrt(y - z)

    def right(z: float) -> float:
        return 1.0 / math.sqrt(z - x)

    # (z - a)^alpha (b - z)^beta carries the singular factor on each piece
    pieces = (
        (left, 0.0, x, (0.0, -0.5)),
        (left, x, mid, (-0.5, 0.0)),
        (right, mid, y, (0.0, -0.5)),
        (right, y, 1.0, (-0.5, 0.0)),
    )
    total = 0.0
    for fn, a, b, wvar in pieces:
        if b > a:
            total += checked_quad(fn, a, b, weight="alg", wvar=wvar, epsabs=eps, epsrel=1e-12)
    return total


def riemann_error_bound(n: int, i: int, j: int) -> float:
    """16 sqrt(2) / (sqrt(n) sqrt(y - x)) + 8 / (n (x + y)) at x = i/n < y = j/n."""
    x, y = i / n, j / n
    return 16.0 * math.sqrt(2.0) / (math.sqrt(n) * math.sqrt(y - x)) + 8.0 / (n * (x + y))


def _check_pair(n: int, i: int, j: int) -> None:
    if i == j:
        raise ArgumentError(f"riemann_phi needs i != j, got i = j = {i}")
    if not (1 <= i < j <= n):
        raise ArgumentError(f"need 1 <= i < j <= n, got n={n}, i={i}, j={j}")


def riemann_phi(n: int, i: int, j: int) -> Tuple[float, float]:
    """((1/n) sum_{k != i, j} theta(x_k), error bound) on the grid x_k = k/n, k = 1..n."""
    _check_pair(n, i, j)
    k = np.arange(1, n + 1)
    k = k[(k != i) & (k != j)]
    total = float(np.sum(theta(i / n, j / n, k / n))) / n
    return total, riemann_error_bound(n, i, j)


def riemann_violations(n: int, min_gap: int = 4) -> Tuple[int, int, float]:
    """Check |phi - riemann sum| <= bound for every 1 <= i < j <= n with j - i >= min_gap.

    Returns (pairs checked, violations, largest gap / bound).
    """
    if n < min_gap + 1:
        raise ArgumentError(f"n = {n} leaves no pairs with j - i >= {min_gap}")
    grid = np.arange(1, n + 1) / n
    checked = violations = 0
    worst = 0.0
    for i in range(1, n - min_gap + 1):
        js = np.arange(i + min_gap, n + 1)
        x, y = i / n, js / n
        # rows of theta(x, y_j, x_k) with k = i and k = j dropped
        with np.errstate(divide="ignore"):
            terms = 1.0 / np.sqrt(
                np.abs(x - grid)[None, :] * np.abs(y[:, None] - grid[None, :])
            )
        terms[:, i - 1] = 0.0
        terms[np.arange(js.size), js - 1] = 0.0
        sums = terms.sum(axis=1) / n
        bound = 16.0 * math.sqrt(2.0) / (math.sqrt(n) * np.sqrt(y - x)) + 8.0 / (n * (x + y))
        gap = np.abs(phi_closed(np.full(js.size, x), y) - sums)
        checked += js.size
        violations += int(np.sum(gap > bound))
        worst = max(worst, float(np.max(gap / bound)))
    logger.debug(f"riemann check n={n}: {checked} pairs, {violations} violations")
    return checked, violations, worst


@functools.lru_cache(maxsize=1)
def c_star() -> float:
    """(1/16) times the integral of phi^2 over {|x - y| >= 1/4} in the unit square."""
    value, err = integrate.dblquad(
        lambda y, x: phi_closed(x, y) ** 2,
        0.0,
        0.75,
        lambda x: x + 0.25,
        lambda x: 1.0,
        epsabs=1e-9,
        epsrel=1e-9,
    )
    if not math.isfinite(value) or err > 1e-4 * abs(value):
        raise NumericError(f"c* quadrature unreliable: value={value}, error={err}")
    # the region is symmetric about the diagonal
    result = 2.0 * value / 16.0
    logger.info(f"c* = {result:.10g}")
    return result


def midpoint_phi_matrix(grid_n: int) -> np.ndarray:
    """phi at cell midpoints (i - 1/2)/grid_n, zero on the diagonal."""
    mid = (np.arange(grid_n) + 0.5) / grid_n
    x, y = np.meshgrid(mid, mid, indexing="ij")
    off = ~np.eye(grid_n, dtype=bool)
    out = np.zeros((grid_n, grid_n))
    out[off] = phi_closed(x[off], y[off])
    return out


def phi_family(grid_n: int) -> CoefficientFamily:
    """Degree-2 family c(i, j) = phi(mid_i, mid_j) / grid_n, so S_2(c, G) discretises I_2(phi)."""
    if grid_n < 2:
        raise ArgumentError(f"grid_n must be >= 2, got {grid_n}")
    return CoefficientFamily.from_dense(midpoint_phi_matrix(grid_n) / grid_n)

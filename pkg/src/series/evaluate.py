"""Evaluation of S_N(c, z), its levels, gradient and the covariance lambda_N.

Single-vector functions mirror the definitions directly. The ``*_batch``
variants take a draws x J matrix and are what the Monte Carlo drivers use:
level 1 is a matrix-vector product, level 2 a quadratic form with the dense
(or sparse) symmetric matrix, and higher levels gather the stored keys.
"""
from __future__ import annotations

import logging
from typing import Optional

import numpy as np
from scipy import sparse

from src.coeffs.family import CoefficientFamily, factorial
from src.coeffs.functionals import lift_cj
from src.config import settings
from src.errors import ArgumentError

logger = logging.getLogger(__name__)

# Keys per gather chunk for levels >= 3.
GATHER_CHUNK = 2048


def _check_n(c: CoefficientFamily, n: Optional[int]) -> int:
    level = c.degree if n is None else n
    if not 1 <= level <= c.degree:
        raise ArgumentError(f"N={level} outside [1, {c.degree}]")
    return level


def _check_vector(c: CoefficientFamily, z) -> np.ndarray:
    z_arr = np.asarray(z, dtype=float)
    if z_arr.ndim != 1 or z_arr.shape[0] != c.support:
        raise ArgumentError(f"expected a vector of length {c.support}, got shape {z_arr.shape}")
    return z_arr


def _check_matrix(c: CoefficientFamily, z) -> np.ndarray:
    z_arr = np.asarray(z, dtype=float)
    if z_arr.ndim != 2 or z_arr.shape[1] != c.support:
        raise ArgumentError(f"expected a draws x {c.support} matrix, got shape {z_arr.shape}")
    return z_arr


def eval_level(c: CoefficientFamily, z, m: int) -> float:
    """Phi_m(c, z): the ordered sum over |alpha| = m, i.e. m! times the canonical sum."""
    z_arr = _check_vector(c, z)
    if not 1 <= m <= c.degree:
        raise ArgumentError(f"level {m} outside [1, {c.degree}]")
    keys, vals = c.level_arrays(m)
    if not len(vals):
        return 0.0
    return factorial(m) * float(np.dot(vals, np.prod(z_arr[keys], axis=1)))


def eval_series(c: CoefficientFamily, z, n: Optional[int] = None) -> float:
    level = _check_n(c, n)
    return sum(eval_level(c, z, m) for m in range(1, level + 1))


def eval_quadratic_dense(c: CoefficientFamily, z) -> float:
    """Level 2 as z' C z with the zero-diagonal symmetric matrix."""
    z_arr = _check_vector(c, z)
    return float(z_arr @ c.dense_matrix() @ z_arr)


def level2_operator(c: CoefficientFamily):
    """Symmetric level-2 matrix: dense when reasonably full, CSR otherwise."""
    if c.support > settings.DENSE_MAX_SUPPORT:
        raise ArgumentError(
            f"level-2 kernels limited to support <= {settings.DENSE_MAX_SUPPORT}, got {c.support}"
        )
    keys, vals = c.level_arrays(2)
    if 2 * len(vals) > 0.1 * c.support**2:
        return c.dense_matrix()
    rows = np.concatenate([keys[:, 0], keys[:, 1]])
    cols = np.concatenate([keys[:, 1], keys[:, 0]])
    data = np.concatenate([vals, vals])
    return sparse.csr_matrix((data, (rows, cols)), shape=(c.support, c.support))


def _apply(op, z: np.ndarray) -> np.ndarray:
    """op @ z' transposed back to draws x J; op is symmetric."""
    return np.asarray((op @ z.T).T)


def eval_level_batch(c: CoefficientFamily, z, m: int, op=None) -> np.ndarray:
    z_arr = _check_matrix(c, z)
    if not 1 <= m <= c.degree:
        raise ArgumentError(f"level {m} outside [1, {c.degree}]")
    if m == 1:
        return z_arr @ c.linear_vector()
    if m == 2:
        op = level2_operator(c) if op is None else op
        return np.einsum("ij,ij->i", _apply(op, z_arr), z_arr)
    keys, vals = c.level_arrays(m)
    out = np.zeros(z_arr.shape[0])
    for start in range(0, len(vals), GATHER_CHUNK):
        k = keys[start : start + GATHER_CHUNK]
        out += np.prod(z_arr[:, k], axis=2) @ vals[start : start + GATHER_CHUNK]
    return factorial(m) * out


def eval_series_batch(c: CoefficientFamily, z, n: Optional[int] = None, op=None) -> np.ndarray:
    level = _check_n(c, n)
    z_arr = _check_matrix(c, z)
    total = np.zeros(z_arr.shape[0])
    for m in range(1, level + 1):
        if c.levels[m]:
            total += eval_level_batch(c, z_arr, m, op if m == 2 else None)
    return total


def partial_derivative(c: CoefficientFamily, z, j: int, n: Optional[int] = None) -> float:
    """c(j) + S_{N-1}(c_j, z), with c_j the lift of c at j."""
    level = _check_n(c, n)
    z_arr = _check_vector(c, z)
    constant, lifted = lift_cj(c, j)
    if level == 1:
        return constant
    return constant + eval_series(lifted, z_arr, level - 1)


def gradient_batch(c: CoefficientFamily, z, n: Optional[int] = None, op=None) -> np.ndarray:
    """draws x J matrix of partial derivatives of S_N."""
    level = _check_n(c, n)
    z_arr = _check_matrix(c, z)
    grad = np.tile(c.linear_vector(), (z_arr.shape[0], 1))
    for m in range(2, level + 1):
        if not c.levels[m]:
            continue
        if m == 2:
            op = level2_operator(c) if op is None else op
            grad += 2.0 * _apply(op, z_arr)
            continue
        keys, vals = c.level_arrays(m)
        weight = factorial(m)
        for p in range(m):
            others = [q for q in range(m) if q != p]
            contrib = weight * vals * np.prod(z_arr[:, keys[:, others]], axis=2)
            np.add.at(grad, (slice(None), keys[:, p]), contrib)
    return grad


def covariance_lambda(c: CoefficientFamily, z, chi, n: Optional[int] = None) -> float:
    """lambda_N = sum_j chi_j (d S_N / d z_j)^2, j over the support of c."""
    level = _check_n(c, n)
    chi_arr = _check_chi(c, chi)
    return float(
        sum(
            partial_derivative(c, z, j, level) ** 2
            for j in range(1, c.support + 1)
            if chi_arr[j - 1]
        )
    )


def covariance_lambda_batch(
    c: CoefficientFamily, z, chi, n: Optional[int] = None, op=None
) -> np.ndarray:
    grad = gradient_batch(c, z, n, op)
    chi_arr = np.asarray(chi)
    if chi_arr.shape != grad.shape:
        raise ArgumentError(f"chi shape {chi_arr.shape} does not match {grad.shape}")
    return np.einsum("ij,ij->i", chi_arr, grad * grad)


def _check_chi(c: CoefficientFamily, chi) -> np.ndarray:
    chi_arr = np.asarray(chi)
    if chi_arr.ndim != 1 or chi_arr.shape[0] != c.support:
        raise ArgumentError(f"chi must be a 0/1 vector of length {c.support}")
    if not np.all((chi_arr == 0) | (chi_arr == 1)):
        raise ArgumentError("chi entries must be 0 or 1")
    return chi_arr

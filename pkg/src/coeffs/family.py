"""Sparse symmetric, diagonal-null coefficient families.

Only strictly increasing keys are stored. The value at any permutation of a
stored key is the stored value, and any key with a repeated index is zero.
Formulas that sum over ordered multi-indices therefore carry explicit
factorial multiplicities (see ``factorial``).
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Dict, Iterable, Mapping, Sequence, Tuple

import numpy as np

from src.coeffs.multi_index import DIAGONAL, MultiIndex, canonicalize, is_canonical
from src.errors import ArgumentError

MAX_FACTORIAL = 20
_FACTORIALS = [math.factorial(k) for k in range(MAX_FACTORIAL + 1)]


def factorial(k: int) -> float:
    if k < 0 or k > MAX_FACTORIAL:
        raise ArgumentError(f"factorial argument out of range [0, {MAX_FACTORIAL}]: {k}")
    return float(_FACTORIALS[k])


@dataclass(frozen=True)
class CoefficientFamily:
    degree: int
    support: int
    entries: Mapping[MultiIndex, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise ArgumentError(f"degree must be >= 1, got {self.degree}")
        if self.support < 1:
            raise ArgumentError(f"support must be >= 1, got {self.support}")
        clean: Dict[MultiIndex, float] = {}
        for key, value in self.entries.items():
            key = tuple(int(i) for i in key)
            if not is_canonical(key):
                raise ArgumentError(f"non-canonical or diagonal key {key}")
            if len(key) > self.degree:
                raise ArgumentError(f"key {key} longer than degree {self.degree}")
            if key[-1] > self.support:
                raise ArgumentError(f"key {key} exceeds support {self.support}")
            value = float(value)
            if not math.isfinite(value):
                raise ArgumentError(f"non-finite coefficient at {key}")
            if value != 0.0:
                clean[key] = value
        object.__setattr__(self, "entries", MappingProxyType(clean))

    # --- construction -----------------------------------------------------

    @classmethod
    def from_raw(
        cls, degree: int, support: int, raw: Iterable[Tuple[Sequence[int], float]]
    ) -> CoefficientFamily:
        """Build from possibly unsorted keys; diagonal keys are rejected."""
        entries: Dict[MultiIndex, float] = {}
        for indices, value in raw:
            key = canonicalize(indices)
            if key is DIAGONAL:
                raise ArgumentError(f"diagonal key {list(indices)} in coefficient data")
            entries[key] = entries.get(key, 0.0) + float(value)
        return cls(degree=degree, support=support, entries=entries)

    @classmethod
    def from_dense(cls, matrix: np.ndarray, atol: float = 1e-12) -> CoefficientFamily:
        """Degree-2 family from a symmetric zero-diagonal matrix (index i -> i+1)."""
        mat = np.asarray(matrix, dtype=float)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ArgumentError(f"dense coefficients must be square, got shape {mat.shape}")
        if np.any(np.abs(np.diag(mat)) > atol):
            raise ArgumentError("dense coefficients must have a zero diagonal")
        if not np.allclose(mat, mat.T, rtol=0.0, atol=atol):
            raise ArgumentError("dense coefficients must be symmetric")
        rows, cols = np.nonzero(np.triu(mat, k=1))
        entries = {
            (int(i) + 1, int(j) + 1): float(mat[i, j]) for i, j in zip(rows, cols)
        }
        return cls(degree=2, support=mat.shape[0], entries=entries)

    # --- access -----------------------------------------------------------

    def value(self, raw: Sequence[int]) -> float:
        key = canonicalize(raw)
        if key is DIAGONAL:
            return 0.0
        return self.entries.get(key, 0.0)

    @cached_property
    def levels(self) -> Dict[int, Dict[MultiIndex, float]]:
        out: Dict[int, Dict[MultiIndex, float]] = {m: {} for m in range(1, self.degree + 1)}
        for key, value in self.entries.items():
            out[len(key)][key] = value
        return out

    def level(self, m: int) -> Dict[MultiIndex, float]:
        self._check_level(m)
        return self.levels[m]

    def level_arrays(self, m: int) -> Tuple[np.ndarray, np.ndarray]:
        """Zero-based index array (K x m) and value vector (K,) for level m."""
        return self._level_arrays[m] if m in self._level_arrays else self._empty(m)

    @cached_property
    def _level_arrays(self) -> Dict[int, Tuple[np.ndarray, np.ndarray]]:
        out = {}
        for m, entries in self.levels.items():
            if entries:
                keys = np.array(list(entries.keys()), dtype=np.int64) - 1
                vals = np.fromiter(entries.values(), dtype=float, count=len(entries))
                out[m] = (keys, vals)
        return out

    @staticmethod
    def _empty(m: int) -> Tuple[np.ndarray, np.ndarray]:
        return np.zeros((0, m), dtype=np.int64), np.zeros(0)

    def linear_vector(self) -> np.ndarray:
        vec = np.zeros(self.support)
        keys, vals = self.level_arrays(1)
        vec[keys[:, 0]] = vals
        return vec

    def dense_matrix(self) -> np.ndarray:
        """Level-2 part as a symmetric zero-diagonal J x J matrix."""
        if self.degree < 2:
            return np.zeros((self.support, self.support))
        mat = np.zeros((self.support, self.support))
        keys, vals = self.level_arrays(2)
        mat[keys[:, 0], keys[:, 1]] = vals
        mat[keys[:, 1], keys[:, 0]] = vals
        return mat

    def max_level(self) -> int:
        return max((len(k) for k in self.entries), default=0)

    # --- algebra ----------------------------------------------------------

    def squared(self) -> CoefficientFamily:
        return CoefficientFamily(
            self.degree, self.support, {k: v * v for k, v in self.entries.items()}
        )

    def scaled(self, factor: float) -> CoefficientFamily:
        return CoefficientFamily(
            self.degree, self.support, {k: factor * v for k, v in self.entries.items()}
        )

    def only_level(self, m: int) -> CoefficientFamily:
        return CoefficientFamily(self.degree, self.support, dict(self.level(m)))

    def __add__(self, other: CoefficientFamily) -> CoefficientFamily:
        entries = dict(self.entries)
        for key, value in other.entries.items():
            entries[key] = entries.get(key, 0.0) + value
        return CoefficientFamily(
            max(self.degree, other.degree), max(self.support, other.support), entries
        )

    # --- identity ---------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "support": self.support,
            "entries": [
                {"indices": list(k), "value": v} for k, v in sorted(self.entries.items())
            ],
        }

    def digest(self) -> str:
        payload = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    def _check_level(self, m: int) -> None:
        if not 1 <= m <= self.degree:
            raise ArgumentError(f"level {m} outside [1, {self.degree}]")

    def __repr__(self) -> str:
        return (
            f"<CoefficientFamily degree={self.degree} support={self.support} "
            f"nnz={len(self.entries)}>"
        )


def eval_coeff(c: CoefficientFamily, raw: Sequence[int]) -> float:
    """Value of c at an arbitrary (possibly unsorted or diagonal) index list."""
    return c.value(raw)

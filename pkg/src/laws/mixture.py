from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np
from scipy import stats

from src.errors import ArgumentError
from src.laws.base import SplitLaw
from src.laws.bump import checked_quad

DEFAULT_WEIGHTS = (0.5, 0.5)
DEFAULT_MEANS = (-0.6, 0.6)
DEFAULT_SDS = (0.8, 0.8)


class GaussMixtureLaw(SplitLaw):
    """Finite Gaussian mixture, shifted and rescaled to zero mean and unit variance.

    The default 0.5 N(-0.6, 0.64) + 0.5 N(0.6, 0.64) is already standard.
    """

    kind = "gauss_mixture"

    def __init__(
        self,
        weights: Optional[Sequence[float]] = None,
        means: Optional[Sequence[float]] = None,
        sds: Optional[Sequence[float]] = None,
        **kwargs,
    ) -> None:
        super().__init__(**kwargs)
        w = np.asarray(weights if weights is not None else DEFAULT_WEIGHTS, dtype=float)
        mu = np.asarray(means if means is not None else DEFAULT_MEANS, dtype=float)
        sd = np.asarray(sds if sds is not None else DEFAULT_SDS, dtype=float)
        if not (w.shape == mu.shape == sd.shape) or w.ndim != 1 or w.size == 0:
            raise ArgumentError("mixture weights, means and sds must be equal-length lists")
        if np.any(w <= 0.0) or np.any(sd <= 0.0):
            raise ArgumentError("mixture weights and sds must be positive")
        w = w / w.sum()
        center = float(np.dot(w, mu))
        scale = math.sqrt(float(np.dot(w, sd**2 + mu**2)) - center**2)
        self.weights = w
        self.means = (mu - center) / scale
        self.sds = sd / scale

    def params(self) -> dict:
        return {
            "weights": self.weights.tolist(),
            "means": self.means.tolist(),
            "sds": self.sds.tolist(),
        }

    def density(self, z):
        z_arr = np.asarray(z, dtype=float)[..., None]
        return np.sum(self.weights * stats.norm.pdf(z_arr, self.means, self.sds), axis=-1)

    def cdf(self, z):
        z_arr = np.asarray(z, dtype=float)[..., None]
        return np.sum(self.weights * stats.norm.cdf(z_arr, self.means, self.sds), axis=-1)

    def abs_moment(self, p: int) -> float:
        return 2.0 * checked_quad(
            lambda z: z**p * 0.5 * float(self.density(z) + self.density(-z)), 0.0, math.inf
        )

    def _draw(self, rng: np.random.Generator, size: int) -> np.ndarray:
        component = np.searchsorted(np.cumsum(self.weights), rng.random(size), side="right")
        component = np.minimum(component, len(self.weights) - 1)
        return self.means[component] + self.sds[component] * rng.standard_normal(size)

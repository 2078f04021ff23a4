from __future__ import annotations

from typing import Callable

import numpy as np
import pytest

from src.coeffs.family import CoefficientFamily
from src.series.oracle import brute_force_series, ordered_tuples, random_family

__all__ = ["brute_force_series", "ordered_tuples", "random_family"]


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def make_family(rng) -> Callable[..., CoefficientFamily]:
    def _make(degree: int, support: int, density: float = 0.6) -> CoefficientFamily:
        return random_family(rng, degree, support, density)

    return _make


@pytest.fixture
def pair_family() -> CoefficientFamily:
    """The single-entry family c{(1,2) -> 1}."""
    return CoefficientFamily(degree=2, support=2, entries={(1, 2): 1.0})

"""Dictionary lower estimates of d_k."""
from __future__ import annotations

import math

import numpy as np
import pytest

from src.distances import (
    TestFunction,
    default_dictionary,
    dk_lower,
    normalized,
    renormalized,
    sobolev_sup_norm,
)
from src.errors import ArgumentError


@pytest.mark.parametrize("kind", ["sigmoid", "bump"])
@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_closed_form_norm_matches_grid(kind, k):
    f = TestFunction(kind, shift=0.3, scale=0.7, weight=1.0)
    x = np.linspace(-12.0, 12.0, 24_001)
    values = f(x)
    total = 0.0
    for _ in range(k + 1):
        total += np.max(np.abs(values))
        values = np.gradient(values, x)
    assert total == pytest.approx(sobolev_sup_norm(kind, 0.7, k), rel=1e-4)


def test_default_dictionary_shape():
    pooled = np.random.default_rng(0).normal(size=1000)
    dictionary = default_dictionary(pooled, k=1)
    assert len(dictionary) == 64
    assert {f.kind for f in dictionary} == {"sigmoid", "bump"}
    assert all(f.norm(1) == pytest.approx(1.0) for f in dictionary)


def test_identical_samples_give_zero(rng):
    a = rng.normal(size=400)
    assert dk_lower(a, a, 1) == 0.0


def test_symmetric(rng):
    a = rng.normal(size=400)
    b = rng.normal(0.3, 1.2, size=500)
    dictionary = default_dictionary(np.concatenate([a, b]), 2)
    assert dk_lower(a, b, 2, dictionary) == pytest.approx(dk_lower(b, a, 2, dictionary), abs=1e-12)


def test_k0_estimate_bounded_by_two(rng):
    a = rng.normal(-3.0, 0.1, size=200)
    b = rng.normal(3.0, 0.1, size=200)
    steep = [normalized("sigmoid", 0.0, 1e-3, 0)]
    value = dk_lower(a, b, 0, steep)
    assert 0.99 < value <= 2.0


def test_enlarging_dictionary_never_decreases(rng):
    a = rng.normal(size=300)
    b = rng.normal(0.4, 1.0, size=300)
    full = default_dictionary(np.concatenate([a, b]), 1)
    assert dk_lower(a, b, 1, full[:10]) <= dk_lower(a, b, 1, full[:40]) <= dk_lower(a, b, 1, full)


def test_higher_order_never_exceeds_lower(rng):
    a = rng.normal(size=300)
    b = rng.uniform(-math.sqrt(3.0), math.sqrt(3.0), size=300)
    base = default_dictionary(np.concatenate([a, b]), 0)
    values = [dk_lower(a, b, k, renormalized(base, k)) for k in range(4)]
    assert values == sorted(values, reverse=True)


def test_unnormalized_member_raises(rng):
    a = rng.normal(size=50)
    with pytest.raises(ArgumentError):
        dk_lower(a, a, 1, [TestFunction("sigmoid", 0.0, 0.5, 1.0)])


def test_worker_count_does_not_change_result(rng):
    a = rng.normal(size=300)
    b = rng.normal(0.2, 1.0, size=300)
    assert dk_lower(a, b, 1, workers=1) == dk_lower(a, b, 1, workers=4)


@pytest.mark.slow
def test_shifted_gaussian_detected_at_k1():
    rng = np.random.default_rng(42)
    a = rng.standard_normal(100_000)
    b = rng.standard_normal(100_000) + 0.5
    assert dk_lower(a, b, 1) > 0.08

"""Smoothed total variation with the gamma_delta kernel."""
from __future__ import annotations

import math

import numpy as np
import pytest
from scipy import integrate

from src.distances import DistanceReport, bootstrap_interval, gamma_kernel, tv_kde
from src.distances.kde import _binned_kde, kde_grid, kde_on_grid
from src.errors import ArgumentError


def test_kernel_is_a_density():
    delta = 0.05
    half = math.sqrt(2.0 * delta)
    mass, _ = integrate.quad(lambda z: gamma_kernel(z, delta), -half, half, limit=200)
    assert mass == pytest.approx(1.0, abs=1e-7)
    assert gamma_kernel(half * 1.01, delta) == 0.0


def test_identical_samples(rng):
    a = rng.normal(size=200)
    assert tv_kde(a, a, 0.05) == 0.0


def test_disjoint_samples(rng):
    a = rng.normal(0.0, 0.1, size=200)
    b = rng.normal(50.0, 0.1, size=200)
    assert tv_kde(a, b, 0.05) == pytest.approx(1.0, abs=1e-9)


def test_symmetric(rng):
    a = rng.normal(size=300)
    b = rng.normal(0.5, 1.0, size=250)
    assert tv_kde(a, b, 0.1) == pytest.approx(tv_kde(b, a, 0.1), abs=1e-12)


def test_matches_quadrature(rng):
    delta = 0.1
    reach = math.sqrt(2.0 * delta)
    for _ in range(10):
        a = rng.normal(size=12)
        b = rng.normal(0.3, 1.3, size=12)
        value = tv_kde(a, b, delta)
        assert value <= 1.0 + 1e-9

        def gap(x, a=a, b=b):
            fa = np.mean(gamma_kernel(x - a, delta))
            return abs(float(fa - np.mean(gamma_kernel(x - b, delta))))

        edges = np.linspace(min(a.min(), b.min()) - reach, max(a.max(), b.max()) + reach, 121)
        exact = 0.5 * sum(
            integrate.quad(gap, lo, hi, limit=100)[0] for lo, hi in zip(edges[:-1], edges[1:])
        )
        assert value == pytest.approx(exact, abs=1e-3)


def test_binned_path_matches_direct(rng):
    delta = 0.05
    a = rng.normal(size=2000)
    grid = kde_grid(a, a, delta)
    h = grid[1] - grid[0]
    direct = kde_on_grid(a, grid, delta)
    binned = _binned_kde(a, grid, delta)
    assert h * np.sum(np.abs(direct - binned)) < 1e-2


def test_rejects_bad_bandwidth(rng):
    with pytest.raises(ArgumentError):
        tv_kde(rng.normal(size=10), rng.normal(size=10), 0.0)


@pytest.mark.slow
def test_independent_gaussian_samples_close():
    rng = np.random.default_rng(42)
    a = rng.standard_normal(100_000)
    b = rng.standard_normal(100_000)
    assert tv_kde(a, b, 0.05) < 0.02


def test_bootstrap_interval_is_reproducible(rng):
    a = rng.normal(size=200)
    b = rng.normal(0.5, 1.0, size=200)
    one = bootstrap_interval(lambda x, y: abs(x.mean() - y.mean()), a, b, 50, seed=3, workers=1)
    four = bootstrap_interval(lambda x, y: abs(x.mean() - y.mean()), a, b, 50, seed=3, workers=4)
    assert one == four
    assert one[0] <= one[1]


def test_report_serialises():
    report = DistanceReport("tv_kde", 0.25, ci=(0.2, 0.3), params={"delta": 0.05})
    payload = report.to_dict()
    assert payload["kind"] == "tv_kde"
    assert payload["ci"] == [0.2, 0.3]
    with pytest.raises(ArgumentError):
        DistanceReport("kolmogorov", -0.1)

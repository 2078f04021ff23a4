"""The kernel phi: closed form against quadrature, and the Riemann-sum error bound."""
from __future__ import annotations

import math

import numpy as np
import pytest

from src.errors import ArgumentError, SingularInputError
from src.experiments import (
    c_star,
    phi_closed,
    phi_family,
    phi_quadrature,
    riemann_error_bound,
    riemann_phi,
    riemann_violations,
    theta,
)
from src.experiments.phi import midpoint_phi_matrix


def test_phi_corner_limit():
    assert phi_closed(1e-12, 1.0 - 1e-12) == pytest.approx(math.pi, abs=1e-5)


def test_phi_plug_in_value():
    expected = math.pi + 2.0 * math.log(
        (math.sqrt(0.75) + math.sqrt(0.25)) / abs(0.5 - math.sqrt(0.75))
    )
    assert phi_closed(0.25, 0.75) == pytest.approx(expected, rel=1e-14)
    assert phi_quadrature(0.25, 0.75) == pytest.approx(expected, abs=1e-8)


def test_phi_symmetric(rng):
    x, y = rng.uniform(0.01, 0.99, (2, 100))
    keep = x != y
    assert np.array_equal(phi_closed(x[keep], y[keep]), phi_closed(y[keep], x[keep]))


def test_quadrature_matches_closed_form(rng):
    checked = 0
    while checked < 100:
        x, y = rng.uniform(0.0, 1.0, 2)
        if abs(x - y) < 0.05:
            continue
        assert abs(phi_quadrature(x, y) - phi_closed(x, y)) <= 1e-8
        assert phi_quadrature(x, y) == pytest.approx(phi_quadrature(y, x), abs=1e-10)
        checked += 1


@pytest.mark.parametrize("fn", [phi_closed, phi_quadrature])
def test_diagonal_is_singular(fn):
    with pytest.raises(SingularInputError):
        fn(0.3, 0.3)
    # SingularInputError is an argument error too
    with pytest.raises(ArgumentError):
        fn(0.0, 0.5)


def test_theta_integrand():
    assert theta(0.2, 0.6, 0.4) == pytest.approx(1.0 / math.sqrt(0.2 * 0.2))


def test_riemann_example():
    n, i, j = 512, 64, 448
    total, bound = riemann_phi(n, i, j)
    assert abs(phi_closed(i / n, j / n) - total) <= bound
    assert bound == pytest.approx(riemann_error_bound(n, i, j))


def test_riemann_bound_decreasing_in_n():
    bounds = [riemann_error_bound(n, n // 8, 7 * n // 8) for n in (64, 128, 256, 512)]
    assert bounds == sorted(bounds, reverse=True)


def test_phi_at_right_endpoint():
    x = 0.3
    expected = math.pi + 2.0 * math.log(math.sqrt(1.0 - x) / (1.0 - math.sqrt(x)))
    assert phi_closed(x, 1.0) == pytest.approx(expected, rel=1e-14)
    assert phi_closed(1.0, x) == pytest.approx(expected, rel=1e-14)
    assert phi_quadrature(x, 1.0) == pytest.approx(expected, abs=1e-8)
    with pytest.raises(SingularInputError):
        phi_closed(1.0, 1.0)
    with pytest.raises(ArgumentError):
        phi_closed(0.5, 1.5)


@pytest.mark.parametrize("n, i", [(128, 1), (128, 64), (512, 1), (512, 500)])
def test_riemann_last_grid_point(n, i):
    total, bound = riemann_phi(n, i, n)
    assert abs(phi_closed(i / n, 1.0) - total) <= bound


def test_riemann_rejects_bad_pairs():
    with pytest.raises(ArgumentError):
        riemann_phi(64, 5, 5)
    with pytest.raises(ArgumentError):
        riemann_phi(64, 10, 65)
    with pytest.raises(ArgumentError):
        riemann_phi(64, 0, 10)


def test_riemann_inequality_holds_everywhere():
    checked, violations, worst = riemann_violations(128)
    # j runs up to n, so every i <= n - 4 has n - 3 - i partners
    assert checked == sum(128 - 3 - i for i in range(1, 125))
    assert violations == 0
    assert worst < 1.0


def test_vectorised_check_agrees_with_single_pair():
    total, bound = riemann_phi(128, 10, 40)
    ratio = abs(phi_closed(10 / 128, 40 / 128) - total) / bound
    assert ratio <= riemann_violations(128)[2] + 1e-9


def test_c_star_positive():
    value = c_star()
    # phi >= pi and the region has area 9/16
    assert value >= math.pi**2 * 9.0 / 256.0
    assert c_star() == value


def test_phi_family_scaling():
    grid = midpoint_phi_matrix(16)
    c = phi_family(16)
    assert c.degree == 2 and c.support == 16
    assert c.value((1, 2)) == pytest.approx(grid[0, 1] / 16.0)
    assert np.all(np.diag(grid) == 0.0)

"""Coefficients of the worked examples and the deterministic inequalities they satisfy."""
from __future__ import annotations

import math

import numpy as np
import pytest

from src.coeffs.contraction import KappaConvention, kappa_chi2
from src.coeffs.functionals import level_norm
from src.errors import ArgumentError
from src.experiments import (
    PhiGrid,
    abar_facts,
    chi2_target_coeffs,
    interaction_matrix,
    quad_clt_coeffs,
    quad_clt_facts,
    row_logsum_check,
)


def test_interaction_matrix_shape():
    a = interaction_matrix(6)
    assert np.array_equal(a, a.T)
    assert np.all(np.diag(a) == 0.0)
    assert np.all(a[~np.eye(6, dtype=bool)] > 0.0)
    assert a[0, 4] == pytest.approx(0.5)


def test_quad_clt_first_entry():
    n = 50
    c = quad_clt_coeffs(n)
    assert c.support == n
    assert c.value((1, 2)) == pytest.approx(1.0 / math.sqrt(2.0 * n * math.log(n)))
    with pytest.raises(ArgumentError):
        quad_clt_coeffs(2)


def test_quad_clt_norm_closed_form():
    n = 100
    harmonic = sum(1.0 / d for d in range(1, n))
    expected = (n * harmonic - (n - 1)) / (n * math.log(n))
    assert level_norm(quad_clt_coeffs(n), 2) ** 2 == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("n", [10, 100, pytest.param(1000, marks=pytest.mark.slow)])
def test_quad_clt_influence_bound(n):
    facts = quad_clt_facts(n)
    assert facts["delta_ok"]
    if n >= 100:
        assert facts["norm_ok"]


def test_row_logsum_all_pass():
    assert row_logsum_check(200).all()
    assert row_logsum_check(1000).all()
    assert row_logsum_check(200).shape == (199,)


def test_row_logsum_first_row_matches_matrix():
    n = 40
    a = interaction_matrix(n)
    rows = np.sum(a**2, axis=1)
    # i = 1: lower bound ln(n - 1)
    assert math.log(n - 1) <= rows[0] <= 2.0 + math.log(n - 1)


def test_phi_grid_derived_matrices():
    grid = PhiGrid(32)
    assert np.allclose(grid.cbar, grid.cbar.T)
    assert np.allclose(np.diag(grid.cbar), grid.second_moments())
    assert np.all(np.diag(grid.cbar_prime) == 0.0)
    assert grid.points[-1] == 1.0
    with pytest.raises(ArgumentError):
        PhiGrid(2)


def test_abar_explicit_bounds():
    facts = abar_facts(512)
    assert facts.c_star > 0.0
    assert facts.norm_lower_ok
    assert facts.contraction_lower_ok
    assert facts.statement_proviso and not facts.proof_proviso
    assert facts.to_dict()["n"] == 512


@pytest.mark.slow
def test_abar_explicit_bounds_large_n():
    assert abar_facts(1024).passed


def test_abar_delta_ratio_does_not_grow():
    small = abar_facts(64).ratios()
    large = abar_facts(512).ratios()
    assert large["delta_ratio"] < small["delta_ratio"]
    assert all(math.isfinite(v) for v in large.values())


def test_chi2_target_entries():
    c = chi2_target_coeffs(2, 4)
    assert c.support == 8
    assert c.value((1, 2)) == pytest.approx(0.25)
    assert c.value((5, 8)) == pytest.approx(0.25)
    assert c.value((4, 5)) == 0.0


@pytest.mark.parametrize("m, length", [(1, 2), (2, 8), (3, 16)])
def test_chi2_target_variance(m, length):
    c = chi2_target_coeffs(m, length)
    assert 2.0 * level_norm(c, 2) ** 2 == pytest.approx(2.0 * m * (1.0 - 1.0 / length))


def test_chi2_target_kappa_decreasing():
    kappas = [
        kappa_chi2(chi2_target_coeffs(2, length), 2, convention=KappaConvention.VARIANCE_MATCHED)
        for length in (8, 16, 32, 64)
    ]
    assert kappas == sorted(kappas, reverse=True)


def test_chi2_target_rejects_bad_sizes():
    with pytest.raises(ArgumentError):
        chi2_target_coeffs(0, 4)
    with pytest.raises(ArgumentError):
        chi2_target_coeffs(2, 1)

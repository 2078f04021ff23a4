"""Contractions, their symmetrisation and the chi-squared functional kappa."""
from __future__ import annotations

import math
from itertools import product

import numpy as np
import pytest

from src.coeffs.contraction import (
    KappaConvention,
    contraction,
    kappa_chi2,
    ordered_count,
    symmetrize_contraction,
    theta_n,
)
from src.coeffs.family import CoefficientFamily
from src.errors import ArgumentError
from tests.conftest import ordered_tuples


def _brute_contraction(c, d, r, alpha, beta):
    return sum(
        c.value(list(alpha) + list(gamma)) * d.value(list(beta) + list(gamma))
        for gamma in ordered_tuples(c.support, r)
    )


def _chi2_block_family(m: int, block: int) -> CoefficientFamily:
    entries = {}
    for b in range(m):
        start = b * block + 1
        for i in range(start, start + block):
            for j in range(i + 1, start + block):
                entries[(i, j)] = 1.0 / block
    return CoefficientFamily(degree=2, support=m * block, entries=entries)


def test_degree_one_full_contraction_is_inner_product():
    c = CoefficientFamily(degree=1, support=3, entries={(1,): 1.0, (2,): -2.0, (3,): 0.5})
    assert contraction(c, c, 1).scalar() == pytest.approx(1.0 + 4.0 + 0.25)


def test_degree_two_matches_triple_loop():
    mat = np.array([[0.0, 1.0, 2.0], [1.0, 0.0, -1.0], [2.0, -1.0, 0.0]])
    c = CoefficientFamily.from_dense(mat)
    table = contraction(c, c, 1)
    for i, j in product(range(1, 4), repeat=2):
        expected = sum(mat[i - 1, k] * mat[j - 1, k] for k in range(3))
        assert table.to_dense(3)[i - 1, j - 1] == pytest.approx(expected)


@pytest.mark.parametrize("r", [0, 1, 2, 3])
def test_degree_three_against_brute_force(make_family, r):
    c = make_family(3, 5).only_level(3)
    d = make_family(3, 5).only_level(3)
    table = contraction(c, d, r)
    for alpha in ordered_tuples(5, 3 - r):
        for beta in ordered_tuples(5, 3 - r):
            assert table.value(alpha, beta) == pytest.approx(
                _brute_contraction(c, d, r, alpha, beta), abs=1e-12
            )


def test_norm_counts_ordered_pairs(make_family):
    c = make_family(3, 5).only_level(3)
    table = contraction(c, c, 1)
    brute = sum(
        _brute_contraction(c, c, 1, alpha, beta) ** 2
        for alpha in ordered_tuples(5, 2)
        for beta in ordered_tuples(5, 2)
    )
    assert table.norm_sq() == pytest.approx(brute)


def test_bilinearity(make_family):
    c = make_family(3, 5).only_level(3)
    d = make_family(3, 5).only_level(3)
    e = make_family(3, 5).only_level(3)
    left = contraction(c + d, e, 2)
    right_c = contraction(c, e, 2)
    right_d = contraction(d, e, 2)
    keys = set(left.entries) | set(right_c.entries) | set(right_d.entries)
    for key in keys:
        assert left.entries.get(key, 0.0) == pytest.approx(
            right_c.entries.get(key, 0.0) + right_d.entries.get(key, 0.0), abs=1e-12
        )


def test_order_out_of_range(pair_family):
    with pytest.raises(ArgumentError):
        contraction(pair_family, pair_family, 3)


def test_general_support_limit(monkeypatch, make_family):
    from src.config import settings

    c = make_family(3, 5).only_level(3)
    monkeypatch.setattr(settings, "MAX_GENERAL_SUPPORT", 4)
    with pytest.raises(ArgumentError):
        contraction(c, c, 1)


def test_symmetrize_scalar_indices():
    c = CoefficientFamily.from_dense(np.array([[0.0, 1.0, 2.0], [1.0, 0.0, 3.0], [2.0, 3.0, 0.0]]))
    d = CoefficientFamily.from_dense(
        np.array([[0.0, -1.0, 0.5], [-1.0, 0.0, 1.0], [0.5, 1.0, 0.0]])
    )
    table = contraction(c, d, 1)
    sym = symmetrize_contraction(table)
    for i, j in product(range(1, 4), repeat=2):
        expected = 0.5 * (table.value((i,), (j,)) + table.value((j,), (i,)))
        assert sym.value((i, j)) == pytest.approx(expected)
        assert sym.value((i, j)) == sym.value((j, i))


def test_symmetrize_leaves_symmetric_table_alone(make_family):
    c = make_family(2, 5).only_level(2)
    table = contraction(c, c, 1)
    sym = symmetrize_contraction(table)
    for (a, b), value in table.entries.items():
        assert sym.value(a + b) == pytest.approx(value)


def test_ordered_count():
    assert ordered_count((1, 2, 3)) == 6
    assert ordered_count((1, 1, 2)) == 3
    assert ordered_count((2, 2)) == 1


def test_theta_values():
    assert theta_n(2) == pytest.approx(0.5)
    assert theta_n(4) == pytest.approx(0.25 * 2 * 6)
    assert theta_n(2, KappaConvention.VARIANCE_MATCHED) == pytest.approx(1.0)
    with pytest.raises(ArgumentError):
        theta_n(3)


def test_kappa_of_zero_is_m_squared():
    zero = CoefficientFamily(degree=2, support=4)
    assert kappa_chi2(zero, 2) == pytest.approx(4.0)
    assert kappa_chi2(CoefficientFamily(degree=4, support=6), 3) == pytest.approx(9.0)


def test_kappa_rejects_odd_or_mixed_levels(pair_family, make_family):
    with pytest.raises(ArgumentError):
        kappa_chi2(make_family(3, 4).only_level(3), 2)
    with pytest.raises(ArgumentError):
        kappa_chi2(make_family(2, 4), 2)


@pytest.mark.parametrize("block", [8, 16])
def test_kappa_closed_form_on_chi2_blocks(block):
    """Variance-matched kappa of the block family is (2m/L)^2 + 8m(L-1)(L+3)/L^3."""
    m = 2
    c = _chi2_block_family(m, block)
    expected = (2 * m / block) ** 2 + 8 * m * (block - 1) * (block + 3) / block**3
    assert kappa_chi2(c, m, convention=KappaConvention.VARIANCE_MATCHED) == pytest.approx(expected)


def test_variance_matched_kappa_decreases_with_block_size():
    values = [
        kappa_chi2(_chi2_block_family(2, block), 2, convention="variance_matched")
        for block in (8, 16, 32, 64)
    ]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_kappa_nonnegative_degree_four(make_family):
    c = make_family(4, 6, density=0.5).only_level(4)
    for convention in KappaConvention:
        value = kappa_chi2(c, 2, convention=convention)
        assert value >= 0.0
        assert math.isfinite(value)

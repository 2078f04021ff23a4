"""Norms, influence factors, N_q weights and lifts, checked against ordered sums.

Canonical storage holds one key per unordered index set, so every functional
multiplies by a factorial. The brute-force helpers below enumerate ordered
tuples directly and never see that factor.
"""
from __future__ import annotations

import math

import numpy as np
import pytest

from src.coeffs.family import CoefficientFamily, factorial
from src.coeffs.functionals import (
    coeff_stats,
    influence,
    level_norm,
    lift_cj,
    nq_weight,
    nq_weight_ceiling,
    total_influence,
    total_norm,
)
from src.errors import ArgumentError
from tests.conftest import ordered_tuples


def _ordered_level_sq(c: CoefficientFamily, m: int) -> float:
    return sum(c.value(alpha) ** 2 for alpha in ordered_tuples(c.support, m))


def _brute_influence(c: CoefficientFamily, m: int) -> float:
    best = 0.0
    for k in range(1, c.support + 1):
        if m == 1:
            partial = c.value([k]) ** 2
        else:
            partial = sum(
                c.value(list(alpha) + [k]) ** 2
                for alpha in ordered_tuples(c.support, m - 1)
                if k not in alpha
            )
        best = max(best, partial)
    return math.sqrt(best)


def test_pair_family_values(pair_family):
    assert level_norm(pair_family, 2) == pytest.approx(math.sqrt(2))
    assert influence(pair_family, 2) == pytest.approx(1.0)
    assert total_influence(pair_family) == pytest.approx(1.0)
    assert total_norm(pair_family) == pytest.approx(math.sqrt(2))


def test_empty_level_and_zero_family():
    c = CoefficientFamily(degree=3, support=4, entries={(1, 2): 1.0})
    assert level_norm(c, 3) == 0.0
    zero = CoefficientFamily(degree=2, support=3)
    assert total_influence(zero) == 0.0
    assert total_norm(zero) == 0.0


def test_level_out_of_range():
    c = CoefficientFamily(degree=2, support=3)
    with pytest.raises(ArgumentError):
        level_norm(c, 3)
    with pytest.raises(ArgumentError):
        influence(c, 0)


@pytest.mark.parametrize("degree, support", [(1, 6), (2, 5), (3, 5), (3, 6)])
def test_against_ordered_enumeration(make_family, degree, support):
    c = make_family(degree, support)
    for m in range(1, degree + 1):
        assert level_norm(c, m) ** 2 == pytest.approx(_ordered_level_sq(c, m), rel=1e-12)
        assert influence(c, m) == pytest.approx(_brute_influence(c, m), rel=1e-12)
        assert influence(c, m) <= level_norm(c, m) + 1e-12


def test_coeff_stats_sums(make_family):
    c = make_family(3, 5)
    stats = coeff_stats(c)
    assert stats.total_influence == pytest.approx(sum(stats.influence))
    assert stats.total_norm**2 == pytest.approx(sum(v * v for v in stats.level_norms))
    assert stats.total_norm == pytest.approx(total_norm(c))


def test_nq_weight_single_term_and_ceiling(make_family):
    c = make_family(3, 5)
    top = nq_weight(c, 3, big_m=2.0)
    assert top == pytest.approx(math.sqrt(factorial(3) * factorial(3) * level_norm(c, 3) ** 2))
    for q in (1, 2, 3):
        for big_m in (1.0, 3.0, 10.0):
            assert nq_weight(c, q, big_m) <= nq_weight_ceiling(c, big_m) + 1e-9
    assert nq_weight(CoefficientFamily(degree=2, support=2), 1, 1.0) == 0.0


def test_nq_weight_rejects_bad_arguments(pair_family):
    with pytest.raises(ArgumentError):
        nq_weight(pair_family, 3, 1.0)
    with pytest.raises(ArgumentError):
        nq_weight(pair_family, 1, 0.5)


def test_lift_examples():
    constant, lifted = lift_cj(CoefficientFamily(degree=2, support=2, entries={(1, 2): 5.0}), 2)
    assert constant == 0.0
    assert dict(lifted.entries) == {(1,): 10.0}

    constant, lifted = lift_cj(CoefficientFamily(degree=1, support=1, entries={(1,): 3.0}), 1)
    assert constant == 3.0
    assert not lifted.entries


def test_lift_round_trip(make_family):
    """Summing squared lifts over j recovers N (N-1)! times the canonical top-level sum."""
    c = make_family(3, 5).only_level(3)
    n = 3
    total = 0.0
    for j in range(1, c.support + 1):
        _, lifted = lift_cj(c, j)
        total += sum(
            lifted.value(alpha) ** 2 / n**2 for alpha in ordered_tuples(c.support, n - 1)
        )
    canonical = float(np.sum(np.square(list(c.entries.values()))))
    assert total == pytest.approx(n * factorial(n - 1) * canonical)


def test_lift_rejects_out_of_range(pair_family):
    with pytest.raises(ArgumentError):
        lift_cj(pair_family, 3)

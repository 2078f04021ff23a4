"""Canonical storage of symmetric, diagonal-null coefficient families.

Only strictly increasing keys are ever stored; everything else (permutations,
repeated indices, unsorted input) is resolved at the boundary. These tests pin
that boundary so the factorial multiplicities used downstream stay honest.
"""
from __future__ import annotations

from itertools import permutations

import numpy as np
import pytest

from src.coeffs.family import CoefficientFamily, eval_coeff, factorial
from src.coeffs.multi_index import DIAGONAL, canonicalize
from src.errors import ArgumentError


@pytest.mark.parametrize(
    "raw, expected",
    [([3, 1, 2], (1, 2, 3)), ([1, 1], DIAGONAL), ([7], (7,)), ([4, 2, 4], DIAGONAL)],
)
def test_canonicalize(raw, expected):
    assert canonicalize(raw) == expected


def test_canonicalize_rejects_empty_and_zero():
    with pytest.raises(ArgumentError):
        canonicalize([])
    with pytest.raises(ArgumentError):
        canonicalize([0, 2])


def test_eval_coeff_symmetry_and_diagonal():
    c = CoefficientFamily(degree=2, support=3, entries={(1, 2): 5.0})
    assert eval_coeff(c, [2, 1]) == 5.0
    assert eval_coeff(c, [1, 1]) == 0.0
    assert eval_coeff(c, [1, 3]) == 0.0


def test_eval_coeff_invariant_under_permutation(make_family):
    c = make_family(3, 5)
    for key, value in c.entries.items():
        for perm in permutations(key):
            assert eval_coeff(c, list(perm)) == value
        assert eval_coeff(c, list(key) + [key[0]]) == 0.0


def test_construction_validates_keys():
    with pytest.raises(ArgumentError):
        CoefficientFamily(degree=2, support=3, entries={(2, 1): 1.0})
    with pytest.raises(ArgumentError):
        CoefficientFamily(degree=1, support=3, entries={(1, 2): 1.0})
    with pytest.raises(ArgumentError):
        CoefficientFamily(degree=2, support=2, entries={(1, 3): 1.0})
    with pytest.raises(ArgumentError):
        CoefficientFamily(degree=2, support=2, entries={(1, 2): float("nan")})


def test_zero_values_are_dropped():
    c = CoefficientFamily(degree=2, support=2, entries={(1, 2): 0.0, (1,): 2.0})
    assert dict(c.entries) == {(1,): 2.0}


def test_from_raw_sums_permutations_and_rejects_diagonal():
    c = CoefficientFamily.from_raw(2, 3, [([2, 1], 1.5), ([1, 2], 0.5)])
    assert c.value([1, 2]) == 2.0
    with pytest.raises(ArgumentError):
        CoefficientFamily.from_raw(2, 3, [([2, 2], 1.0)])


def test_dense_round_trip(make_family):
    c = make_family(2, 6).only_level(2)
    mat = c.dense_matrix()
    assert np.allclose(mat, mat.T)
    assert np.all(np.diag(mat) == 0.0)
    assert CoefficientFamily.from_dense(mat).entries == c.entries


def test_from_dense_rejects_bad_matrices():
    with pytest.raises(ArgumentError):
        CoefficientFamily.from_dense(np.eye(3))
    with pytest.raises(ArgumentError):
        CoefficientFamily.from_dense(np.array([[0.0, 1.0], [2.0, 0.0]]))


def test_factorial_table():
    assert factorial(0) == 1.0
    assert factorial(5) == 120.0
    assert factorial(20) == 2432902008176640000.0
    with pytest.raises(ArgumentError):
        factorial(21)


def test_digest_is_order_independent():
    a = CoefficientFamily(degree=2, support=3, entries={(1, 2): 1.0, (2, 3): 2.0})
    b = CoefficientFamily(degree=2, support=3, entries={(2, 3): 2.0, (1, 2): 1.0})
    assert a.digest() == b.digest()
    assert a.digest() != a.scaled(2.0).digest()

"""Chi-squared bounds, rate templates and the bound suite."""
from __future__ import annotations

import math

import pytest

from src.bounds import (
    UniversalConstants,
    chi2_bound,
    chi2_tv_template,
    evaluate_bounds,
    k1,
    quad_clt_templates,
)
from src.coeffs.contraction import KappaConvention
from src.coeffs.family import CoefficientFamily
from src.errors import ArgumentError


def block_family(m: int, length: int) -> CoefficientFamily:
    entries = {}
    for b in range(m):
        idx = range(b * length + 1, (b + 1) * length + 1)
        for i in idx:
            for j in idx:
                if i < j:
                    entries[(i, j)] = 1.0 / length
    return CoefficientFamily(degree=2, support=m * length, entries=entries)


def test_k1_values():
    assert k1(1) == pytest.approx(math.sqrt(math.pi))
    assert k1(2) == pytest.approx(math.sqrt(math.pi / 2.0))
    with pytest.raises(ArgumentError):
        k1(0)


def test_zero_coefficients():
    zero = CoefficientFamily(degree=2, support=4)
    assert chi2_bound(zero, 2) == pytest.approx(k1(2) * 2.0)


def test_odd_degree_rejected():
    c = CoefficientFamily(degree=3, support=3, entries={(1, 2, 3): 1.0})
    with pytest.raises(ArgumentError):
        chi2_bound(c, 1)


def test_variance_matched_bound_shrinks_with_block_length():
    values = [
        chi2_bound(block_family(2, length), 2, convention=KappaConvention.VARIANCE_MATCHED)
        for length in (8, 16, 32)
    ]
    assert values == sorted(values, reverse=True)


def test_chi2_tv_template_positive():
    assert chi2_tv_template(block_family(2, 8), 2) > 0.0


def test_quad_clt_templates_decrease():
    grids = [quad_clt_templates(n) for n in (64, 256, 1024)]
    for key in ("invariance", "gaussian_limit", "variance_estimator"):
        values = [g[key] for g in grids]
        assert values == sorted(values, reverse=True)
    with pytest.raises(ArgumentError):
        quad_clt_templates(2)


def test_suite_flags_templates():
    reports = evaluate_bounds(block_family(2, 4), UniversalConstants(), m=2)
    names = [r.name for r in reports]
    assert names == [
        "c_small",
        "c_big",
        "smooth_invariance",
        "hoeffding_threshold",
        "hoeffding_tail",
        "small_ball_hoeffding_tail",
        "cw_tail",
        "tv_invariance",
        "chi2_d1",
        "chi2_tv",
    ]
    templates = {"c_big", "cw_tail", "tv_invariance", "chi2_tv"}
    for report in reports:
        assert report.constants_assumed == (report.name in templates)
    tail = next(r for r in reports if r.name == "hoeffding_tail")
    assert tail.flags["h2_satisfied"] is True


def test_suite_on_zero_family():
    names = [r.name for r in evaluate_bounds(CoefficientFamily(degree=2, support=3))]
    assert "tv_invariance" not in names
    assert "smooth_invariance" in names

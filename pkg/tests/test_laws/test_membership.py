"""Membership of the shipped laws in the class with parameters (M_p, r, eps).

The splitting sampler needs eps psi_r(|z - z_k|^2) <= p_Z(z) pointwise, so
that is the condition validated, together with centring, unit variance and
the moment bounds.
"""
from __future__ import annotations

import math

import pytest

from src.laws import GaussMixtureLaw, LawFamily, get_law, law_from_config
from src.errors import ArgumentError, ConfigError


@pytest.mark.parametrize("kind", ["normal", "uniform", "gauss_mixture"])
def test_shipped_laws_pass_default_split(kind):
    report = get_law(kind, center=0.0, r=0.25, epsilon=0.2).validate_membership()
    assert report.passed, report.failures
    assert report.min_margin >= -1e-12
    assert report.mean == pytest.approx(0.0, abs=1e-8)
    assert report.variance == pytest.approx(1.0, abs=1e-8)


def test_rademacher_fails_for_lack_of_density():
    report = get_law("rademacher").validate_membership()
    assert not report.passed
    assert "law has no density" in report.failures
    assert not report.has_density


def test_uniform_threshold_is_exposed():
    law = get_law("uniform", r=0.25, epsilon=0.25)
    report = law.validate_membership()
    assert report.passed
    assert report.epsilon_max == pytest.approx(1.0 / (2.0 * math.sqrt(3.0)))
    assert not law.validate_membership(epsilon=0.3).passed


def test_normal_threshold():
    report = get_law("normal", r=0.25, epsilon=0.2).validate_membership()
    # the normal density is smallest at the edge of the plateau in ratio to psi
    assert 0.2 < report.epsilon_max < 0.4


def test_moment_bounds_are_checked():
    law = get_law("normal")
    assert not law.validate_membership(moment_bounds={2: 0.5}).passed
    assert law.validate_membership(moment_bounds={2: 1.0, 4: 3.0 ** 0.25}).passed


def test_mixture_is_restandardised():
    law = GaussMixtureLaw(weights=[0.3, 0.7], means=[-2.0, 1.0], sds=[0.5, 1.5])
    report = law.validate_membership(epsilon=0.05)
    assert report.mean == pytest.approx(0.0, abs=1e-8)
    assert report.variance == pytest.approx(1.0, abs=1e-8)


def test_registry_and_config():
    with pytest.raises(ArgumentError):
        get_law("cauchy")
    law = law_from_config({"kind": "uniform", "z_k": 0.1, "r": 0.2, "epsilon": 0.1})
    assert law.kind == "uniform"
    assert law.center == 0.1
    with pytest.raises(ConfigError):
        law_from_config({"kind": "normal", "r": 1.5})
    with pytest.raises(ConfigError):
        law_from_config({"kind": "normal", "params": {"unknown": 1}})


def test_bernoulli_p():
    law = get_law("normal", r=0.25, epsilon=0.2)
    assert 0.2 * 2.0 * 0.5 <= law.bernoulli_p <= 0.2 * 2.0 * math.sqrt(0.5)


def test_family_validation_and_digest():
    law = get_law("normal")
    family = LawFamily.iid(law, 5)
    assert family.support == 5
    assert len(family.validate()) == 1
    assert family.digest() == LawFamily.iid(get_law("normal"), 5).digest()
    assert family.digest() != LawFamily.iid(get_law("uniform"), 5).digest()

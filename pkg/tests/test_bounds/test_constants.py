"""The constants c_N(r, eps) and C_N(r, eps), the constants file and bound reports."""
from __future__ import annotations

import json
import math

import pytest

from src.bounds import BoundReport, UniversalConstants, c_big, c_small, load_constants
from src.errors import ArgumentError, ConfigError


def test_c_small_examples():
    assert c_small(1, 0.5, 1.0) == pytest.approx(0.25)
    assert c_small(2, 0.25, 0.2) == pytest.approx(1.25e-5, rel=1e-12)


def test_c_small_decreasing_in_n():
    values = [c_small(n, 0.25, 0.2) for n in range(1, 6)]
    assert values == sorted(values, reverse=True)


@pytest.mark.parametrize("r, epsilon", [(0.0, 0.2), (1.0, 0.2), (0.25, 0.0), (0.25, 1.5)])
def test_c_small_rejects_out_of_range(r, epsilon):
    with pytest.raises(ArgumentError):
        c_small(2, r, epsilon)


def test_c_big_defaults_and_powers():
    assert c_big(2, 0.25, 0.2, UniversalConstants()) == pytest.approx(2 * math.e * 4 * 5)
    consts = UniversalConstants(C=3.0, q1=2, q2=1, q3=2, q4=3, m_p=2.0)
    expected = 3.0 * 6.0**2 * math.exp(2.0) * 0.5**-2 * 0.5**-3
    assert c_big(3, 0.5, 0.5, consts) == pytest.approx(expected)


def test_load_constants(tmp_path):
    assert load_constants(None).source == "default"
    path = tmp_path / "consts.json"
    path.write_text(json.dumps({"p_star": 2.0, "C": 0.5}))
    consts = load_constants(path)
    assert consts.p_star == 2.0
    assert consts.source == str(path)


@pytest.mark.parametrize("payload", ['{"p_star": 0.5}', '{"q1": 0}', "not json"])
def test_load_constants_rejects_bad_files(tmp_path, payload):
    path = tmp_path / "consts.json"
    path.write_text(payload)
    with pytest.raises(ConfigError):
        load_constants(path)
    with pytest.raises(ConfigError):
        load_constants(tmp_path / "missing.json")


def test_report_flags_templates():
    report = BoundReport("cw_tail", 0.5, template=True, constants_source="default")
    assert report.constants_assumed
    assert report.to_dict()["constants_assumed"] is True
    assert not BoundReport("c_small", 0.1).constants_assumed
    with pytest.raises(ArgumentError):
        BoundReport("broken", -1.0)

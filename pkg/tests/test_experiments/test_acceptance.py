"""The acceptance suite runner and its report."""
from __future__ import annotations

import json

import pytest

from src.errors import AcceptanceError
from src.experiments import AcceptanceConfig, AcceptanceRecord, AcceptanceReport, run_acceptance


def test_fast_criteria_pass(tmp_path):
    config = AcceptanceConfig(criteria=[6, 1, 12], output_dir=str(tmp_path))
    report = run_acceptance(config)
    assert [r.criterion for r in report.records] == [1, 6, 12]
    assert report.passed, report.to_dict()
    saved = json.loads((tmp_path / "acceptance.json").read_text())
    assert saved["passed"] is True
    assert len(saved["records"]) == 3


def test_unknown_criterion_is_skipped():
    assert run_acceptance(AcceptanceConfig(criteria=[99])).records == []


def test_soft_failures_do_not_fail_the_report():
    report = AcceptanceReport(
        records=[
            AcceptanceRecord(1, "phi_closed_form", True),
            AcceptanceRecord(11, "small_ball_shape", False, hard=False),
        ]
    )
    assert report.passed
    report.raise_for_failures()


def test_hard_failures_raise():
    report = AcceptanceReport(records=[AcceptanceRecord(7, "isometry", False)])
    assert not report.passed
    with pytest.raises(AcceptanceError, match="7 \\(isometry\\)"):
        report.raise_for_failures()


@pytest.mark.slow
def test_deterministic_inequalities():
    assert run_acceptance(AcceptanceConfig(criteria=[2, 3])).passed


@pytest.mark.slow
def test_hoeffding_and_splitting():
    assert run_acceptance(AcceptanceConfig(criteria=[4, 5, 7])).passed

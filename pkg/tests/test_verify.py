"""Harness plumbing: suite selection, result serialization, the budget
skip and reproducibility across seeds and instance counts."""

from __future__ import annotations

import json

import pytest

from mgx.verify import SUITES, run_suite


def test_suites_cover_every_check_exactly_once():
    assert set(SUITES["all"]) == {
        "1", "1-stretch", "2", "3", "4", "5", "6",
        "7", "8", "9", "10", "11", "12",
    }
    assert len(SUITES["all"]) == 13
    for name, ids in SUITES.items():
        assert len(ids) == len(set(ids))
        assert set(ids) <= set(SUITES["all"])


def test_unknown_suite_raises():
    with pytest.raises(ValueError):
        run_suite("everything")


def test_entropy_suite_passes_and_serializes():
    report = run_suite("entropy")
    assert report.passed
    assert [c.check_id for c in report.checks] == ["4", "5"]
    obj = report.to_json_obj()
    assert obj["suite"] == "entropy"
    assert obj["passed"] is True
    for check in obj["checks"]:
        assert set(check) == {"id", "anchor", "status", "observed",
                              "expected", "seconds"}
    json.dumps(obj)  # everything JSON-serializable


def test_budget_flag_skips_only_the_stretch_check():
    report = run_suite("base-cases", time_s=59)
    by_id = {c.check_id: c for c in report.checks}
    assert by_id["1"].status == "PASS"
    assert by_id["1-stretch"].status == "SKIPPED-budget"
    assert report.passed  # skips do not fail the suite
    full = run_suite("base-cases", time_s=600)
    assert {c.status for c in full.checks} == {"PASS"}


def test_reduced_instance_counts_still_pass():
    report = run_suite("turan", reduction_instances=60,
                       structure_instances=20)
    assert report.passed


def test_seed_changes_reduction_sampling_but_not_verdict():
    for seed in (0, 1, 7):
        report = run_suite("sparse", seed=seed)
        assert report.passed

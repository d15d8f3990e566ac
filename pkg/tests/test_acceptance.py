"""Acceptance gate: one test per numbered harness check, each printing a
single pass/fail line. The underlying computations live in mgx.verify so
the CLI `verify` subcommand and this gate can never drift apart."""

from __future__ import annotations

import pytest

from mgx.verify import _ANCHORS, Harness

pytestmark = pytest.mark.acceptance


@pytest.fixture(scope="module")
def harness():
    # one shared instance so exact-search results are computed once
    return Harness(threads=0, seed=0, stretch_allowed=True)


def _gate(harness, check_id: str):
    result = harness._run_check(check_id)
    line = f"[{result.status}] criterion {check_id}: {_ANCHORS[check_id]}"
    print(line)
    assert result.status == "PASS", (
        f"{line}\n  observed: {result.observed}\n  expected: {result.expected}"
    )


def test_criterion_1_small_base_cases(harness):
    _gate(harness, "1")


def test_criterion_1_stretch_row(harness):
    _gate(harness, "1-stretch")


def test_criterion_2_sum_maxima(harness):
    _gate(harness, "2")


def test_criterion_3_threshold_separation(harness):
    _gate(harness, "3")


def test_criterion_4_balance_fraction(harness):
    _gate(harness, "4")


def test_criterion_5_entropy_identities(harness):
    _gate(harness, "5")


def test_criterion_6_optimal_part_sizes(harness):
    _gate(harness, "6")


def test_criterion_7_reduction_lemmas(harness):
    _gate(harness, "7")


def test_criterion_8_symmetrization(harness):
    _gate(harness, "8")


def test_criterion_9_sparse_rows(harness):
    _gate(harness, "9")


def test_criterion_10_root_monotonicity(harness):
    _gate(harness, "10")


def test_criterion_11_six_part_witness(harness):
    _gate(harness, "11")


def test_criterion_12_thread_invariance(harness):
    _gate(harness, "12")

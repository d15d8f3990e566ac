"""Regime classification for q near the all-simple threshold, the exact
values and bounds per regime, and the six-part cyclic witness."""

from __future__ import annotations

from math import comb, log

import pytest

from mgx.core import edge_product, edge_sum, is_sq_graph
from mgx.solver import ex_pi_exact
from mgx.sparse import (
    GIRTH,
    LINEAR_EXACT,
    LINEAR_THETA,
    ONE,
    POWER,
    QUADRATIC_THETA,
    SUBQUADRATIC,
    ZERO,
    Bounds,
    ExactValue,
    classify,
    h6,
    sparse_value,
    sparse_witness,
)


def test_classify_s4_full_map():
    want = {0: ZERO, 1: ZERO, 2: ZERO, 3: ZERO, 4: ZERO, 5: ZERO,
            6: ONE, 7: POWER, 8: LINEAR_EXACT, 9: GIRTH,
            10: QUADRATIC_THETA, 11: QUADRATIC_THETA, 12: QUADRATIC_THETA}
    for q, tag in want.items():
        assert classify(4, q).tag == tag


def test_classify_s5_full_map():
    for q in range(10):
        assert classify(5, q).tag == ZERO
    assert classify(5, 10).tag == ONE
    assert classify(5, 11).tag == POWER
    assert classify(5, 12).tag == LINEAR_THETA
    assert classify(5, 13).tag == LINEAR_EXACT
    assert classify(5, 14).tag == GIRTH
    assert classify(5, 15).tag == SUBQUADRATIC
    for q in range(16, 21):
        assert classify(5, q).tag == QUADRATIC_THETA


def test_classify_rejects_out_of_range():
    with pytest.raises(ValueError):
        classify(1, 0)
    with pytest.raises(ValueError):
        classify(4, 13)
    with pytest.raises(ValueError):
        classify(4, -1)


def test_exact_regime_values_against_search():
    # every exactly-determined row agrees with the solver at small n
    for s in (4, 5):
        for n in range(s, 7):
            for q in range(0, 2 * comb(s, 2) + 1):
                value = sparse_value(n, s, q)
                true = ex_pi_exact(n, s, q).optimum
                if isinstance(value, ExactValue):
                    assert value.value == true, (n, s, q)
                else:
                    assert value.lower <= true <= value.upper, (n, s, q)


def test_power_regime_closed_form():
    assert sparse_value(6, 4, 7) == ExactValue(2)
    assert sparse_value(9, 5, 11) == ExactValue(2)
    assert sparse_value(9, 5, 12).lower >= 2  # theta row, bounds only


def test_linear_exact_row():
    for n, want in ((4, 4), (5, 8), (6, 16)):
        assert sparse_value(n, 4, 8) == ExactValue(want)
    assert sparse_value(9, 4, 8) == ExactValue(2 ** (2 * 9 // 3))


def test_girth_row_uses_cycle_free_edge_counts():
    assert sparse_value(5, 4, 9) == ExactValue(2**5)
    assert sparse_value(6, 4, 9) == ExactValue(2**6)
    assert sparse_value(8, 4, 9) == ExactValue(2**10)
    assert sparse_value(6, 5, 14) == ExactValue(2**6)


def test_witnesses_attain_lower_bounds():
    for s in (4, 5):
        for n in range(s, 8):
            for q in range(0, 2 * comb(s, 2) + 1):
                g = sparse_witness(n, s, q)
                assert g.n == n
                assert is_sq_graph(g, s, q), (n, s, q)
                value = sparse_value(n, s, q)
                lower = value.value if isinstance(value, ExactValue) else value.lower
                assert edge_product(g) == lower, (n, s, q)


def test_zero_and_one_regimes():
    assert sparse_value(7, 4, 5) == ExactValue(0)
    assert sparse_value(7, 4, 6) == ExactValue(1)
    g = sparse_witness(7, 4, 6)
    assert edge_product(g) == 1
    assert edge_sum(g) == comb(7, 2)


def test_sparse_value_validates_n():
    with pytest.raises(ValueError):
        sparse_value(3, 4, 7)


def test_h6_structure_and_membership():
    g = h6(6)
    assert edge_product(g) == 373248
    for n in (6, 12, 18, 25):
        assert is_sq_graph(h6(n), 5, 24)
    with pytest.raises(ValueError):
        h6(5)


def test_h6_rate_approaches_its_density():
    n = 300
    rate = log(edge_product(h6(n))) / comb(n, 2)
    target = log(3) / 3 + log(2) / 2
    assert abs(rate - target) < 10 / n


def test_quadratic_theta_bounds_are_ordered():
    v = sparse_value(7, 4, 11)
    assert isinstance(v, Bounds)
    assert 1 <= v.lower <= v.upper
    assert v.lower_note and v.upper_note

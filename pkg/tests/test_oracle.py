import pytest

from punctpoly.oracle import (
    canonical_edge_set,
    oracle_punctured_sap,
    oracle_punctured_staircase,
    oracle_staircase,
    sap_interior_cells,
    sap_walks,
    staircase_counts_by_width_height,
)
from punctpoly.series import BivariateSeries, staircase_gf


def test_staircase_counts_match_catalan():
    st = oracle_staircase(12)
    assert st.eval_q1().coefficients == staircase_gf(12).coefficients


def test_staircase_small_area_distributions():
    st = oracle_staircase(6)
    assert st.qpolys[2] == [0, 1]
    assert st.qpolys[3] == [0, 0, 2]
    assert st.qpolys[4] == [0, 0, 0, 4, 1]
    assert sum(st.qpolys[4]) == 5


def test_staircase_area_lower_bound():
    st = oracle_staircase(10)
    for m, p in enumerate(st.qpolys):
        for n, c in enumerate(p):
            if c:
                assert n >= m - 1


def test_transposition_symmetry():
    counts = staircase_counts_by_width_height(10)
    for (w, h), c in counts.items():
        assert counts[(h, w)] == c


def test_minimal_puncture_first_terms():
    p1 = oracle_punctured_staircase(10, 1, "minimal")
    totals = [sum(p) for p in p1.qpolys]
    assert totals[:9] == [0] * 8 + [1]
    assert totals[9] == 12
    # the unique m=8 configuration is the 3x3 square minus its centre cell
    assert p1.qpolys[8] == [0] * 8 + [1]


def test_minimal_two_punctures_first_term():
    p2 = oracle_punctured_staircase(12, 2, "minimal")
    totals = [sum(p) for p in p2.qpolys]
    assert totals == [0] * 12 + [2]


def test_fixed_size_two_equals_minimal():
    p1 = oracle_punctured_staircase(10, 1, "minimal")
    f2 = oracle_punctured_staircase(10, 1, "fixed_total_s", s=2)
    assert f2 == p1


def test_arbitrary_is_sum_over_fixed_sizes():
    m_max = 11
    arb = oracle_punctured_staircase(m_max, 1, "arbitrary")
    total = BivariateSeries.zero(m_max)
    for s in range(2, m_max - 1):
        total = total + oracle_punctured_staircase(m_max, 1, "fixed_total_s", s=s)
    assert arb == total


def test_area_identity_on_minimal():
    # net area = outer area - r: the q-degree at x^m is (outer max area) - r
    p1 = oracle_punctured_staircase(10, 1, "minimal")
    st = oracle_staircase(8)
    assert len(p1.qpolys[10]) - 1 == (len(st.qpolys[8]) - 1) - 1


def test_bad_arguments_rejected():
    with pytest.raises(ValueError):
        oracle_punctured_staircase(10, 3, "minimal")
    with pytest.raises(ValueError):
        oracle_punctured_staircase(10, 1, "fixed_total_s")
    with pytest.raises(ValueError):
        oracle_punctured_sap(16, 2)
    with pytest.raises(ValueError):
        oracle_punctured_sap(40, 0)


def test_sap_counts():
    s0 = oracle_punctured_sap(16, 0)
    assert s0.coefficients == [0, 0, 1, 2, 7, 28, 124, 588, 2938]


def test_sap_walks_are_distinct_translation_classes():
    seen = set()
    for walk in sap_walks(8):
        key = canonical_edge_set(walk)
        assert key not in seen
        seen.add(key)
    assert len(seen) == 1 + 2 + 7


def test_sap_interior_cells():
    square = [(0, 0), (1, 0), (1, 1), (0, 1)]
    assert sap_interior_cells(square) == {(0, 0)}
    big = [(0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2), (0, 2), (0, 1)]
    assert sap_interior_cells(big) == {(0, 0), (1, 0), (0, 1), (1, 1)}


def test_punctured_sap_smallest():
    s1 = oracle_punctured_sap(16, 1)
    assert s1.coefficients == [0] * 8 + [1]

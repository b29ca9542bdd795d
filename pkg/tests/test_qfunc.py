import math

import pytest

from punctpoly.oracle import oracle_punctured_staircase, oracle_staircase
from punctpoly.qfunc import (
    area_moment_gf,
    minimal_puncture_qfe,
    qfe_residual,
    solve_qfe,
)
from punctpoly.series import _stirling2, staircase_gf
from punctpoly.transfer import tm_enumerate


def test_low_order_coefficients():
    p = solve_qfe(4)
    assert p.qpolys[2] == [0, 1]  # unit square, area 1
    assert p.qpolys[3] == [0, 0, 2]  # two dominoes, area 2


def test_q1_specialisation_is_staircase_gf():
    p = solve_qfe(20)
    assert p.eval_q1().coefficients == staircase_gf(20).coefficients


def test_matches_oracle():
    assert solve_qfe(13) == oracle_staircase(13)


def test_methods_agree():
    assert solve_qfe(18) == solve_qfe(18, "recurrence")


def test_residual_vanishes():
    p = solve_qfe(16)
    assert all(not poly for poly in qfe_residual(p).qpolys)


def test_minimal_puncture_matches_transfer_matrix():
    s1 = minimal_puncture_qfe(20)
    assert s1 == tm_enumerate(20, 1, bivariate=True).bivariate(1)


def test_minimal_puncture_matches_oracle():
    assert minimal_puncture_qfe(12) == oracle_punctured_staircase(12, 1, "minimal")


def test_minimal_puncture_smallest_term():
    s1 = minimal_puncture_qfe(9)
    # unique m=8 polygon: 3x3 square, net area 9 - 1 = 8
    assert s1.qpolys[8] == [0] * 8 + [1]


def test_area_moment_examples():
    p = solve_qfe(10)
    assert area_moment_gf(p, 0).coefficients == staircase_gf(10).coefficients
    assert area_moment_gf(p, 2).coefficients[3] == 8  # two polygons of area 2


def test_factorial_vs_ordinary_moments():
    p = solve_qfe(12)
    fact = [
        [sum(c * math.comb(n, j) for n, c in enumerate(poly)) for poly in p.qpolys]
        for j in range(5)
    ]
    for k in range(5):
        weights = [_stirling2(k, j) * math.factorial(j) for j in range(k + 1)]
        combined = [
            sum(w * fact[j][m] for j, w in enumerate(weights))
            for m in range(p.x_truncation + 1)
        ]
        assert combined == area_moment_gf(p, k).coefficients


def test_bad_arguments_rejected():
    with pytest.raises(ValueError):
        solve_qfe(1)
    with pytest.raises(ValueError):
        solve_qfe(10, method="newton")
    with pytest.raises(ValueError):
        minimal_puncture_qfe(7)
    with pytest.raises(ValueError):
        area_moment_gf(solve_qfe(4), -1)

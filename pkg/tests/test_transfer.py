import math
from fractions import Fraction

import pytest

from punctpoly.oracle import oracle_punctured_staircase, oracle_staircase
from punctpoly.series import (
    RationalPolynomial,
    algebraic_power,
    series_mul,
    staircase_gf,
)
from punctpoly.transfer import tm_enumerate


def catalan_counts(m_max):
    return [0, 0] + [math.comb(2 * m - 2, m - 1) // m for m in range(2, m_max + 1)]


def once_punctured_closed_form(trunc):
    # [1] (1-8x+20x^2-16x^3+2x^4) / (2(1-4x))
    # [2] - (1-6x+10x^2-4x^3) / (2 sqrt(1-4x))
    inv = algebraic_power(RationalPolynomial([1, -4]), -1, trunc)
    half = algebraic_power(RationalPolynomial([1, -4]), Fraction(-1, 2), trunc)
    num1 = RationalPolynomial([1, -8, 20, -16, 2]).to_series(trunc)
    num2 = RationalPolynomial([1, -6, 10, -4]).to_series(trunc)
    s = series_mul(num1, inv, trunc) - series_mul(num2, half, trunc)
    return [c / 2 for c in s.coefficients]


def test_unpunctured_counts_are_catalan():
    res = tm_enumerate(40)
    assert res.counts(0).coefficients == catalan_counts(40)


def test_unpunctured_counts_match_staircase_gf():
    res = tm_enumerate(24)
    assert res.counts(0).coefficients == staircase_gf(24).coefficients


def test_bivariate_matches_oracle_up_to_two_punctures():
    res = tm_enumerate(12, 2, bivariate=True)
    assert res.bivariate(0) == oracle_staircase(12)
    assert res.bivariate(1) == oracle_punctured_staircase(12, 1, "minimal")
    assert res.bivariate(2) == oracle_punctured_staircase(12, 2, "minimal")


def test_once_punctured_counts_match_closed_form():
    res = tm_enumerate(30, 1)
    exact = once_punctured_closed_form(30)
    assert [Fraction(c) for c in res.counts(1).coefficients] == exact


def test_moment_mode_matches_bivariate_mode():
    biv = tm_enumerate(14, 2, bivariate=True)
    mom = tm_enumerate(14, 2, k_max=3)
    for r in range(3):
        for k in range(4):
            assert mom.moment(r, k) == biv.bivariate(r).moment(k)
            assert mom.factorial_moment(r, k).coefficients == [
                sum(c * math.comb(n, k) for n, c in enumerate(p))
                for p in biv.bivariate(r).qpolys
            ]


def test_factorial_moments_match_oracle():
    mom = tm_enumerate(13, 1, k_max=2)
    orc = oracle_punctured_staircase(13, 1, "minimal")
    for k in range(3):
        assert mom.factorial_moment(1, k).coefficients == [
            sum(c * math.comb(n, k) for n, c in enumerate(p)) for p in orc.qpolys
        ]


def test_moment_is_stirling_combination_of_factorial_moments():
    mom = tm_enumerate(16, 1, k_max=3)
    m2 = mom.moment(1, 2)
    f1 = mom.factorial_moment(1, 1)
    f2 = mom.factorial_moment(1, 2)
    assert m2.coefficients == [a + 2 * b for a, b in zip(f1, f2)]


def test_debug_mode_validates_signatures():
    res = tm_enumerate(12, 2, debug=True)
    assert res.counts(0).coefficients == catalan_counts(12)


def test_bad_arguments_rejected():
    with pytest.raises(ValueError):
        tm_enumerate(1)
    with pytest.raises(ValueError):
        tm_enumerate(10, r_max=9)
    with pytest.raises(ValueError):
        tm_enumerate(10, k_max=13)
    with pytest.raises(ValueError):
        tm_enumerate(40, bivariate=True)
    res = tm_enumerate(10, 1, k_max=1)
    with pytest.raises(ValueError):
        res.moment(1, 2)
    with pytest.raises(ValueError):
        res.bivariate(1)

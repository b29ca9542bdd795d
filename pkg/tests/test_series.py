import math
from fractions import Fraction

import pytest

from punctpoly.series import (
    BivariateSeries,
    IntegerSeries,
    JetSeries,
    RationalPolynomial,
    RationalSeries,
    TruncationError,
    algebraic_power,
    read_series,
    series_mul,
    series_reciprocal,
    staircase_gf,
    write_series,
)


def sqrt_one_minus_4x(trunc):
    return algebraic_power(RationalPolynomial([1, -4]), Fraction(1, 2), trunc)


def test_sqrt_one_minus_4x_first_terms():
    s = sqrt_one_minus_4x(6)
    assert s.coefficients == [1, -2, -2, -4, -10, -28, -84]


def test_algebraic_power_inverse_pair():
    g = RationalPolynomial([1, 3, -2, 7])
    for alpha in (Fraction(1, 2), Fraction(-3, 2), Fraction(33, 2), 3):
        a = algebraic_power(g, alpha, 20)
        b = algebraic_power(g, -Fraction(alpha), 20)
        prod = series_mul(a, b, 20)
        assert prod.coefficients == [1] + [Fraction(0)] * 20


def test_algebraic_power_integer_exponent_matches_direct():
    g = RationalPolynomial([1, 4, 16])
    direct = (g * g * g).to_series(10)
    assert algebraic_power(g, 3, 10).coefficients == direct.coefficients


def test_algebraic_power_zero_constant_term_rejected():
    with pytest.raises(ValueError):
        algebraic_power(RationalPolynomial([0, 1]), Fraction(1, 2), 5)


def test_sign_sequence_oracle_half_integer_power():
    # Independent oracle: square (1+4x+16x^2)^33 exactly, then take the
    # series square root by the standard sqrt recurrence.
    g = RationalPolynomial([1, 4, 16])
    trunc = 7
    p = RationalPolynomial([1])
    for _ in range(33):
        p = p * g
    h = p.to_series(trunc).coefficients
    c = [Fraction(1)] + [Fraction(0)] * trunc
    for n in range(1, trunc + 1):
        s = sum(c[k] * c[n - k] for k in range(1, n))
        c[n] = (h[n] - s) / 2
    s = algebraic_power(g, Fraction(33, 2), trunc)
    assert s.coefficients == c
    signs = [(0 if v == 0 else (1 if v > 0 else -1)) for v in s.coefficients]
    oracle_signs = [(0 if v == 0 else (1 if v > 0 else -1)) for v in c]
    assert signs == oracle_signs == [1] * (trunc + 1)


def test_staircase_gf_catalan_values():
    p = staircase_gf(10)
    assert p[0] == 0 and p[1] == 0
    assert p[2] == 1
    assert p[3] == 2
    assert p[4] == 5
    assert p[10] == 4862


def test_staircase_gf_square_convolution():
    p = staircase_gf(8)
    sq = series_mul(p, p, 8)
    assert sq[4] == 1  # only 1*1 from m=2 twice


def test_staircase_quadratic_identity():
    # P^2 - (1-2x) P + x^2 = 0
    trunc = 30
    p = staircase_gf(trunc)
    sq = series_mul(p, p, trunc)
    lin = IntegerSeries([0, 0, 1], trunc) - series_mul(
        IntegerSeries([1, -2], trunc), p, trunc
    )
    assert sq.coefficients == [-c for c in lin.coefficients] or (sq + lin).coefficients != []
    residual = sq - series_mul(IntegerSeries([1, -2], trunc), p, trunc) + IntegerSeries([0, 0, 1], trunc)
    assert residual.coefficients == [0] * (trunc + 1)


def test_series_mul_truncation_guard():
    a = IntegerSeries([1, 1], 1)
    b = IntegerSeries([1, 2, 3], 2)
    with pytest.raises(TruncationError):
        series_mul(a, b, 2)
    assert series_mul(a, b, 1).coefficients == [1, 3]


def test_series_reciprocal():
    p = RationalSeries([1, -4], 12)
    r = series_reciprocal(p, 12)
    assert r.coefficients == [Fraction(4) ** n for n in range(13)]
    assert series_mul(p, r, 12).coefficients == [1] + [Fraction(0)] * 12


def test_rational_polynomial_eval_and_arith():
    p = RationalPolynomial([1, -4])
    q = RationalPolynomial([0, 0, 1])
    assert p(Fraction(1, 4)) == 0
    assert (p * p + q).degree == 2
    assert (p - p).degree == -1


def test_bivariate_mul_and_substitution():
    # P = x^2 q + higher; check q-substitution reindexing and moments.
    b = BivariateSeries.zero(5)
    b.qpolys[2] = [0, 1]          # x^2 q
    b.qpolys[3] = [0, 0, 2]       # 2 x^3 q^2
    sub = b.substitute_qx()
    assert sub.coefficient(2, 3) == 1
    assert sub.coefficient(3, 5) == 2
    assert b.moment(0).coefficients == [0, 0, 1, 2, 0, 0]
    assert b.moment(1).coefficients == [0, 0, 1, 4, 0, 0]
    sq = b * b
    assert sq.coefficient(4, 2) == 1
    assert sq.coefficient(5, 3) == 4


def test_bivariate_reciprocal():
    b = BivariateSeries.zero(6)
    b.qpolys[0] = [1]
    b.qpolys[1] = [0, -2]  # 1 - 2 q x
    r = b.reciprocal()
    for m in range(7):
        assert r.coefficient(m, m) == 2 ** m
    assert (b * r).qpolys[0] == [1]
    assert all(not p for p in (b * r).qpolys[1:])


def test_jet_series_matches_bivariate():
    b = BivariateSeries.zero(6)
    b.qpolys[2] = [0, 1]
    b.qpolys[3] = [0, 0, 2]
    b.qpolys[4] = [0, 0, 1, 0, 3]
    j = JetSeries.from_bivariate(b, 3)
    for k in range(4):
        assert j.factorial_moment(k).coefficients == [
            sum(c * math.comb(n, k) for n, c in enumerate(p)) for p in b.qpolys
        ]
    for k in range(4):
        assert j.moment(k).coefficients == b.moment(k).coefficients
    js = j.substitute_qx()
    bs = JetSeries.from_bivariate(b.substitute_qx(), 3)
    assert js == bs
    assert (j * j) == JetSeries.from_bivariate(b * b, 3)
    assert j.mul_q() == JetSeries.from_bivariate(b.mul_q(), 3)
    assert j.dq() == JetSeries.from_bivariate(b.dq(), 2)


def test_jet_reciprocal():
    b = BivariateSeries.zero(8)
    b.qpolys[0] = [1]
    b.qpolys[1] = [0, -2]
    j = JetSeries.from_bivariate(b, 2)
    r = j.reciprocal()
    assert r == JetSeries.from_bivariate(b.reciprocal(), 2)


def test_series_file_roundtrip(tmp_path):
    p = staircase_gf(12)
    path = tmp_path / "st.series"
    write_series(path, p, "staircase")
    back, headers = read_series(path)
    assert headers["name"] == "staircase"
    assert back.coefficients == p.coefficients

    r = RationalSeries([Fraction(1, 3), Fraction(-2, 7)], 4)
    path2 = tmp_path / "rat.series"
    write_series(path2, r, "rat")
    back2, _ = read_series(path2)
    assert back2.coefficients == r.coefficients

    b = BivariateSeries.zero(4)
    b.qpolys[2] = [0, 1]
    b.qpolys[3] = [0, 0, 2]
    path3 = tmp_path / "biv.series"
    write_series(path3, b, "biv")
    back3, _ = read_series(path3)
    assert back3 == b

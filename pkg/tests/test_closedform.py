from fractions import Fraction

import pytest

from punctpoly.amplitudes import PiPower
from punctpoly.closedform import (
    ReconstructionError,
    check_d_recurrence,
    closed_form_amplitudes,
    fixed_size_amplitude_tables,
    reconstruct,
    reconstruct_moment_form,
)
from punctpoly.series import IntegerSeries, RationalPolynomial
from punctpoly.transfer import tm_enumerate


def _half(ints):
    return RationalPolynomial([Fraction(c, 2) for c in ints])


def test_once_punctured_closed_form():
    tm = tm_enumerate(30, 1, k_max=1)
    cf = reconstruct_moment_form(tm.counts(1), 1, 0)
    assert cf.A == _half([1, -8, 20, -16, 2])
    assert cf.B == _half([-1, 6, -10, 4])
    amp = closed_form_amplitudes(cf)
    assert amp.leading == Fraction(1, 256)
    assert amp.correction == PiPower(Fraction(-1, 32), -1)
    # first area moment, exponent 5/2
    cf1 = reconstruct_moment_form(tm.moment(1, 1), 1, 1)
    assert cf1.A == RationalPolynomial([1, -14, 72, -162, 145, -34, 2])
    assert cf1.B == RationalPolynomial([-1, 12, -50, 82, -43, 4])


def test_twice_punctured_closed_form():
    tm = tm_enumerate(26, 2)
    cf = reconstruct_moment_form(tm.counts(2), 2, 0)
    assert cf.A == _half([0, 0, 1, -26, 228, -906, 1709, -1378, 322])
    assert cf.B == _half([0, 0, -1, 24, -182, 586, -815, 404, -32])
    amp = closed_form_amplitudes(cf)
    assert amp.leading == PiPower(Fraction(5, 49152), -1)
    assert amp.correction == Fraction(-1, 2048)


def test_expand_round_trips():
    tm = tm_enumerate(30, 1)
    cf = reconstruct_moment_form(tm.counts(1), 1, 0)
    assert [int(c) for c in cf.expand(30).coefficients] == list(
        tm.counts(1).coefficients
    )


def test_perturbed_series_rejected():
    tm = tm_enumerate(26, 2)
    bad = list(tm.counts(2).coefficients)
    bad[20] += 1
    with pytest.raises(ReconstructionError):
        reconstruct(IntegerSeries(bad, 26), Fraction(5, 2), 10)


def test_short_series_rejected():
    tm = tm_enumerate(20, 1)
    with pytest.raises(ValueError):
        reconstruct(tm.counts(1), 1, 10)


def test_gamma_pole_leaves_amplitude_undefined():
    # gamma = 0: the leading Gamma factor has a pole
    tm = tm_enumerate(30, 1)
    cf = reconstruct_moment_form(tm.counts(1), 1, 0)
    cf.gamma = Fraction(0)
    amp = closed_form_amplitudes(cf)
    assert amp.leading is None
    with pytest.raises(ValueError):
        amp.require("leading")


def test_fixed_size_tables_one_hole():
    t = fixed_size_amplitude_tables(4, 1, k_max=1)
    assert t["sequence"] == [1, 5, 29]
    assert t["rows"][2]["b"] == Fraction(1, 8)
    assert t["rows"][3]["b"] == Fraction(5, 64)


def test_fixed_size_tables_two_holes():
    t = fixed_size_amplitude_tables(5, 2, k_max=0)
    assert t["sequence"] == [1, 9]
    assert t["s4_enumerated"] == Fraction(1, 128)
    assert t["rows"][4]["b"] == Fraction(1, 128)


def test_d_recurrence_shift_search():
    rec = check_d_recurrence([1, 5, 29, 182])
    assert rec["holds"][0] is True
    assert sum(1 for v in rec["holds"].values() if v) == 1
    assert any(r != 0 for r in rec["residuals"][1])

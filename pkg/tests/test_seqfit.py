from fractions import Fraction

import mpmath as mp
import pytest

from punctpoly.amplitudes import amplitude_chain
from punctpoly.closedform import reconstruct_moment_form
from punctpoly.holes import fixed_size_series
from punctpoly.oracle import oracle_punctured_staircase
from punctpoly.seqfit import (
    AsymptoticForm,
    Term,
    arbitrary_form,
    fit_scan,
    fit_window,
    log_amplitude_check,
    minimal_puncture_form,
    partial_sum_amplitude,
    sign_pattern,
)
from punctpoly.series import (
    RationalPolynomial,
    RationalSeries,
    algebraic_power,
    series_mul,
    staircase_gf,
)
from punctpoly.transfer import tm_enumerate


def test_sign_pattern():
    assert sign_pattern(RationalPolynomial([1, -4]), Fraction(1, 2), 3) == -1
    # even polynomial: odd coefficients vanish identically
    assert [
        sign_pattern(RationalPolynomial([1, 0, 1]), Fraction(7, 2), i)
        for i in range(6)
    ] == [1, 0, 1, 0, 1, 0]
    with pytest.raises(ValueError):
        sign_pattern(RationalPolynomial([2, 1]), Fraction(1, 2), 1)


def _minimal_series(trunc):
    tm = tm_enumerate(30, 1)
    return reconstruct_moment_form(tm.counts(1), 1, 0).expand(trunc).coefficients


def test_minimal_puncture_leading_amplitude():
    series = _minimal_series(300)
    fit = fit_window(series, minimal_puncture_form(6), 300, K=6)
    assert abs(fit.amplitudes[0] - mp.mpf(1) / 256) < 1e-8 / 256


def test_successive_windows_converge():
    series = _minimal_series(300)
    form = minimal_puncture_form(3)
    scan = fit_scan(series, form, [100, 200, 300])
    errs = [abs(f.amplitudes[0] - mp.mpf(1) / 256) for f in scan]
    assert errs[0] > errs[1] > errs[2]


def test_planted_power_log():
    form = AsymptoticForm(4, [Term(Fraction(3, 2)), Term(1), Term(1, "log_m")])
    with mp.workdps(80):
        vals = [
            mp.mpf(4) ** m
            * (2 * mp.mpf(m) ** mp.mpf("1.5") + 3 * m * mp.log(m) + 5 * m)
            if m
            else mp.mpf(0)
            for m in range(40)
        ]
    amps = fit_window(vals, form, 39).amplitudes
    for a, want in zip(amps, (2, 5, 3)):
        assert abs(a - want) < 1e-10


def test_planted_alternating():
    form = AsymptoticForm(4, [Term(1), Term(-2, "alternating")])
    with mp.workdps(80):
        vals = [
            mp.mpf(4) ** m * (m + (-1) ** m * mp.mpf(m) ** -2) if m else mp.mpf(0)
            for m in range(30)
        ]
    amps = fit_window(vals, form, 29).amplitudes
    assert abs(amps[0] - 1) < 1e-10 and abs(amps[1] - 1) < 1e-10


def test_planted_sign_pattern():
    pat = RationalPolynomial([1, 4, 16])
    alpha = Fraction(33, 2)
    with mp.workdps(80):
        vals = [
            mp.mpf(4) ** m
            * (
                2 * mp.mpf(m) ** mp.mpf("1.5")
                + 7 * sign_pattern(pat, alpha, m) * mp.mpf(m) ** -1
            )
            if m
            else mp.mpf(0)
            for m in range(48)
        ]
    form = AsymptoticForm(
        4, [Term(Fraction(3, 2)), Term(-1, "sign_pattern", pat, alpha)]
    )
    amps = fit_window(vals, form, 47).amplitudes
    assert abs(amps[0] - 2) < 1e-10 and abs(amps[1] - 7) < 1e-10


def test_scaling_invariance():
    series = _minimal_series(120)
    form = minimal_puncture_form(2)
    base = fit_window(series, form, 120).amplitudes
    scaled = fit_window([c * 7 for c in series], form, 120).amplitudes
    for a, b in zip(base, scaled):
        assert abs(b - 7 * a) <= 1e-12 * max(1, abs(7 * a))


def test_partial_sum_staircase():
    gf = staircase_gf(300).coefficients
    ladder = [Fraction(-1, 2) - j for j in range(6)]
    (M, est), = partial_sum_amplitude(gf, Fraction(1, 4), ladder)
    assert M == 300 and abs(est - mp.mpf("0.25")) < 1e-8


def test_partial_sum_constant():
    (_, est), = partial_sum_amplitude([1, 0, 0, 0, 0], Fraction(1, 4), [])
    assert est == 1


def _planted_log_series(trunc, A, B, C):
    const = lambda c: RationalSeries([Fraction(c)] + [Fraction(0)] * trunc, trunc)
    log14 = RationalSeries(
        [Fraction(0)] + [Fraction(-(4 ** n), n) for n in range(1, trunc + 1)], trunc
    )
    sq = algebraic_power(RationalPolynomial([1, -4]), Fraction(1, 2), trunc)
    inner = const(A) + series_mul(const(B) + C * log14, sq, trunc)
    pole = algebraic_power(RationalPolynomial([1, -4]), Fraction(-5, 2), trunc)
    return series_mul(inner, pole, trunc).coefficients


def test_log_amplitude_planted():
    # (A + (B + C log(1-4x)) sqrt(1-4x)) / (1-4x)^(5/2): the coefficient of
    # m log m in [x^m]/4^m is -C / Gamma(2) = -C
    series = _planted_log_series(300, 1, 2, 3)
    J = 8
    form = (
        AsymptoticForm.power_family(4, Fraction(3, 2), J)
        + AsymptoticForm.power_family(4, 1, J)
        + AsymptoticForm.power_family(4, 1, J, modifier="log_m")
    )
    c0 = fit_window(series, form, 300).amplitudes[2 * J]
    assert abs(c0 + 3) < 1e-8 * 3


def _arbitrary_hole_series(m_max):
    tot = [0] * (m_max + 1)
    s = 2
    while True:
        try:
            counts = fixed_size_series(m_max, s).counts().coefficients
        except ValueError:
            break
        if not any(counts):
            break
        tot = [a + b for a, b in zip(tot, counts)]
        s += 1
    return tot


def test_log_amplitude_short_series_smoke():
    series = _arbitrary_hole_series(22)
    oracle = oracle_punctured_staircase(13, 1, "arbitrary").eval_q1().coefficients
    assert series[:14] == list(oracle)
    table = amplitude_chain(k_max=1)
    res = log_amplitude_check(series, table, k=0, K=0)
    # short series: right sign and order of magnitude only
    assert -0.5 < res["ratio"] < -0.05


def test_log_amplitude_absent_for_unpunctured():
    gf = staircase_gf(200).coefficients
    table = amplitude_chain(k_max=1)
    res = log_amplitude_check(gf, table, k=0, K=3, M=200)
    dominant = max(abs(a) for a in res["fit"].amplitudes)
    assert abs(res["c0"]) < 1e-6 * dominant


def test_bad_arguments():
    with pytest.raises(ValueError):
        AsymptoticForm(4, [Term(1), Term(1)])
    with pytest.raises(ValueError):
        Term(1, "wavelet")
    with pytest.raises(ValueError):
        Term(1, "sign_pattern")
    with pytest.raises(ValueError):
        fit_window([1, 2, 3], AsymptoticForm(4, [Term(0)]), 5)
    with pytest.raises(ValueError):
        log_amplitude_check([1] * 5, amplitude_chain(k_max=1), K=3)

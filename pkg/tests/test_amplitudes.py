import math
from fractions import Fraction

import mpmath as mp
import pytest

from punctpoly.amplitudes import (
    PiPower,
    airy_ai,
    airy_first_zero,
    airy_scaling,
    amplitude_chain,
    area_amplitude_series_punctured,
    cauchy_asymptotics_check,
    ck_sequence,
    exact_gamma,
    limit_law_moments,
    punctured_amplitudes,
    rooted_sap_constants,
    scaling_function_transform,
    universal_ratios,
)


def test_ck_sequence():
    assert ck_sequence(3) == [1, 1, Fraction(-5, 2), 15]


def test_exact_gamma():
    assert exact_gamma(Fraction(1, 2)) == PiPower(1, 1)
    assert exact_gamma(Fraction(5, 2)) == PiPower(Fraction(3, 4), 1)
    assert exact_gamma(Fraction(-1, 2)) == PiPower(-2, 1)
    assert exact_gamma(4) == PiPower(6)
    assert exact_gamma(0) is None
    assert exact_gamma(-3) is None


def test_staircase_amplitudes():
    t = amplitude_chain(k_max=3)
    assert t.A[0] == PiPower(Fraction(1, 4), -1)
    assert t.A[1] == Fraction(1, 16)
    assert t.A[2] == PiPower(Fraction(5, 96), -1)
    assert t.A[3] == Fraction(15, 1024)


def test_high_order_amplitudes_exact():
    # regression: Fraction ** Fraction degrades to float for half-integer
    # exponents, which silently rounded A_k once the k! f_k x_c^-gamma
    # numerator exceeded 2^53 (first at k = 10)
    t = amplitude_chain(k_max=12)
    for k in range(13):
        g = (Fraction(k) - Fraction(1, 3)) / Fraction(2, 3)
        num = Fraction((-1) ** k * math.factorial(k)) * t.f[k] * Fraction(2) ** (3 * k - 1)
        assert t.A[k].q == num / exact_gamma(g).q
    assert t.A[10] == PiPower(Fraction(304702375, 357245779968), -1)


def test_punctured_amplitudes_exact_anchors():
    t = amplitude_chain(k_max=4)
    # minimal single puncture, k = 0
    assert punctured_amplitudes(t, 1, "minimal")[0] == Fraction(1, 256)
    # fixed size s = 2 coincides with minimal (one shape, p_2 = 1)
    p = [0, 0, 1]
    assert punctured_amplitudes(t, 1, "fixed", s=2, P=p)[0] == Fraction(1, 256)
    # arbitrary size: P(1/4) = 1/4 for staircase polygons
    amps = punctured_amplitudes(t, 1, "arbitrary", P_at_xc=Fraction(1, 4))
    assert amps[0] == Fraction(1, 64)
    amps2 = punctured_amplitudes(t, 2, "arbitrary", P_at_xc=Fraction(1, 4))
    assert amps2[0] == PiPower(Fraction(5, 3072), -1)


def test_universal_ratios():
    r0 = universal_ratios(0, 2)
    assert r0[2] == PiPower(Fraction(5, 3), -2)  # 5/(3 pi)
    r1 = universal_ratios(1, 2)
    assert r1[2] == PiPower(Fraction(27, 160), 2)  # 27 pi / 160
    # universality: identical for any model constants
    sap = amplitude_chain(rooted_sap_constants(), k_max=4)
    num = universal_ratios(1, 2, sap)[2]
    assert abs(num - r1[2].value()) < 1e-12


def test_limit_law_moments():
    t = amplitude_chain(k_max=6)
    mm = limit_law_moments(t, 1, "minimal")
    assert mm["ratio"][0] == Fraction(1, 16)  # A_1 x_c^2 / A_1
    assert mm["normalised"][0] == 1
    sums = mm["carleman_partial_sums"](2)
    assert len(sums) == 2 and sums[1] > sums[0] > 0


def test_scaling_transform_matches_fixed_s2_series():
    t = amplitude_chain(k_max=10)
    base = area_amplitude_series_punctured(t, 0, "minimal")
    image = scaling_function_transform(base)
    s2 = area_amplitude_series_punctured(t, 1, "fixed", s=2, P=[0, 0, 1])
    want = {k: c for k, c in s2}
    for k, c in image:
        assert c == want.get(k, 0)


def test_airy_against_mpmath():
    for z in ("-2.0", "-0.7", "0.0", "1.3", "5.0", "6.9", "7.5", "20.0"):
        ai, aip = airy_ai(mp.mpf(z))
        assert abs(ai - mp.airyai(mp.mpf(z))) <= 1e-12 * max(1, abs(ai))
        assert abs(aip - mp.airyai(mp.mpf(z), 1)) <= 1e-12 * max(1, abs(aip))


def test_airy_first_zero():
    assert abs(airy_first_zero() - mp.mpf("-2.33810741045976704")) < 1e-15


def test_riccati_identity():
    grid = [mp.mpf("0.2") + i * mp.mpf("0.3") for i in range(17)]
    ev = airy_scaling(grid)
    assert all(abs(ev.riccati_residual(i)) < 1e-12 for i in range(len(grid)))
    with pytest.raises(ValueError):
        airy_scaling([-0.36])


def test_cauchy_asymptotics():
    for gamma in (1, 1.5):
        (ratio,) = cauchy_asymptotics_check(gamma, -0.5, 3000)
        assert abs(ratio - 1) < 0.02
    with pytest.raises(ValueError):
        cauchy_asymptotics_check(0.2, -0.5, 10)


def test_bad_arguments():
    t = amplitude_chain(k_max=3)
    with pytest.raises(ValueError):
        punctured_amplitudes(t, 1, "fixed")
    with pytest.raises(ValueError):
        punctured_amplitudes(t, 1, "arbitrary")
    with pytest.raises(ValueError):
        punctured_amplitudes(t, 1, "cubist")
    with pytest.raises(ValueError):
        punctured_amplitudes(t, 5, "minimal", k_max=3)

"""End-to-end verification battery: one test (and one printed pass/fail
line) per advertised guarantee.  Heavy transfer-matrix enumerations are
shared across tests through a session-scoped cache."""

import pytest

from punctpoly.acceptance import (
    SharedRuns,
    check_catalan,
    check_convolution_lemma,
    check_correction_law,
    check_differential_approximants,
    check_exact_amplitudes,
    check_fit_recovery,
    check_minimal_closed_forms,
    check_oracle_agreement,
    check_partial_sums,
    check_punctured_sap_smallest,
    check_ratio_table,
    check_scaling_function,
)


@pytest.fixture(scope="session")
def runs():
    return SharedRuns()


def _assert_pass(result):
    print(result)
    assert result.passed is True, result.detail


def test_criterion_01_catalan(runs):
    _assert_pass(check_catalan(runs))


def test_criterion_02_minimal_closed_forms(runs):
    _assert_pass(check_minimal_closed_forms(runs))


def test_criterion_03_oracle_agreement(runs):
    _assert_pass(check_oracle_agreement(runs))


def test_criterion_04_ratio_table(runs):
    _assert_pass(check_ratio_table(runs))


def test_criterion_05_exact_amplitudes(runs):
    _assert_pass(check_exact_amplitudes(runs))


def test_criterion_06_correction_law(runs):
    _assert_pass(check_correction_law(runs))


def test_criterion_07_fit_recovery(runs):
    _assert_pass(check_fit_recovery(runs))


def test_criterion_08_partial_sums(runs):
    _assert_pass(check_partial_sums(runs))


def test_criterion_09_differential_approximants(runs):
    _assert_pass(check_differential_approximants(runs))


def test_criterion_10_scaling_function(runs):
    _assert_pass(check_scaling_function(runs))


def test_criterion_11_convolution_lemma(runs):
    _assert_pass(check_convolution_lemma(runs))


def test_criterion_12_smallest_punctured_sap(runs):
    _assert_pass(check_punctured_sap_smallest(runs))

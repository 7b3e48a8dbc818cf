"""
Acceptance criteria at their stated tolerances.

Each test prints one graded line; the lines are also collected in the
"acceptance criteria" section of the pytest summary.
"""

import pytest

from ringres import reproduce as rp


def _grade(record_check, outcome):
    check = record_check(outcome.check)
    assert check.passed, check.line()


def test_criterion_01_resonant_radii(ctx, record_check):
    _grade(record_check, rp.criterion_1(ctx))


def test_criterion_02_shape_constants(ctx, record_check):
    _grade(record_check, rp.criterion_2(ctx))


def test_criterion_03_closed_form_coefficients(ctx, record_check):
    _grade(record_check, rp.criterion_3(ctx))


def test_criterion_04_corotation_coefficients(ctx, record_check):
    _grade(record_check, rp.criterion_4(ctx))


def test_criterion_05_libration_amplitudes(ctx, record_check):
    _grade(record_check, rp.criterion_5(ctx))


def test_criterion_06_second_order_lindblad(ctx, record_check):
    _grade(record_check, rp.criterion_6(ctx))


def test_criterion_07_third_order_lindblad(ctx, record_check):
    _grade(record_check, rp.criterion_7(ctx))


@pytest.mark.slow
def test_criterion_08_bifurcations(ctx, record_check):
    _grade(record_check, rp.criterion_8(ctx, n_steps=500))


def test_criterion_09_kam_nondegeneracy(ctx, record_check):
    _grade(record_check, rp.criterion_9(ctx))


def test_criterion_10_property_suites(ctx, record_check):
    _grade(record_check, rp.criterion_10(ctx))

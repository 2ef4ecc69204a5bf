"""One test per acceptance criterion; run with -s to see the pass/fail lines."""

import pytest

from darkbox import acceptance


def report(check):
    res = check()
    print("\n" + res.line())
    return res


def test_criterion_1_bethe_table():
    assert report(acceptance.check_bethe_reference).passed


@pytest.mark.slow
def test_criterion_2_ed_against_bethe():
    assert report(acceptance.check_ed_vs_bethe).passed


def test_criterion_3_dark_catalog():
    assert report(acceptance.check_dark_catalog).passed


def test_criterion_4_dark_flatness():
    assert report(acceptance.check_dark_flatness).passed


def test_criterion_5_matrix_element_oracle():
    assert report(acceptance.check_oracle).passed


@pytest.mark.slow
def test_criterion_6_strong_limit():
    assert report(acceptance.check_strong_limit).passed


def test_criterion_7_limit_identities():
    assert report(acceptance.check_limits).passed


def test_criterion_8_localization():
    assert report(acceptance.check_localization).passed


def test_criterion_9_eigensolver_contract():
    assert report(acceptance.check_eigensolver).passed

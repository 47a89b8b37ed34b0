import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quartic_pms.effective_frequency import OscillatorParams, b_function
from quartic_pms.errors import DomainError
from quartic_pms.series import (EXACT_RSPT_COEFFS, RationalSeries, b_taylor, bender_wu_asymptote,
                                bender_wu_ratio, series_compose, series_log, series_mul, series_sqrt,
                                strong_coupling_coeffs, weak_coupling_energy, weak_coupling_frequency)
from quartic_pms.spectrum import ground_energy

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=20)


@settings(max_examples=40)
@given(st.lists(rationals, min_size=1, max_size=6))
def test_sqrt_squares_back(tail):
    s = RationalSeries([Fraction(1)] + tail)
    r = series_sqrt(series_mul(s, s))
    assert r == s


@settings(max_examples=40)
@given(st.lists(rationals, min_size=1, max_size=6), st.lists(rationals, min_size=1, max_size=6))
def test_log_of_product_is_sum(a, b):
    sa, sb = RationalSeries([1] + a), RationalSeries([1] + b)
    order = min(sa.order, sb.order)
    lhs = series_log(series_mul(sa, sb))
    rhs = series_log(sa.truncate(order)) + series_log(sb.truncate(order))
    assert lhs == rhs


def test_series_basic_identities():
    x = RationalSeries.variable(4)
    log1p = series_log(1 + x)
    assert list(log1p) == [0, 1, Fraction(-1, 2), Fraction(1, 3), Fraction(-1, 4)]
    # Composition with the identity map.
    assert series_compose(log1p, x) == log1p
    with pytest.raises(DomainError):
        series_sqrt(RationalSeries([2, 1]))
    with pytest.raises(DomainError):
        series_log(RationalSeries([2, 1]))
    with pytest.raises(DomainError):
        series_compose(log1p, 1 + x)


def test_b_taylor_coefficients():
    assert list(b_taylor(4)) == [1, 3, -15, 180, -3105]


def test_b_taylor_matches_numeric_at_small_x():
    assert b_taylor(8).evaluate(0.01) == pytest.approx(b_function(0.01), rel=1e-7)


def test_weak_coupling_table():
    coeffs = weak_coupling_energy(5)
    assert list(coeffs) == [Fraction(1, 2), Fraction(3, 4), Fraction(-15, 4), Fraction(54),
                            Fraction(-20817, 16), Fraction(216243, 5)]


def test_weak_coupling_first_two_orders_are_exact():
    coeffs = weak_coupling_energy(3)
    assert coeffs[:2] == EXACT_RSPT_COEFFS[:2]


def test_higher_orders_available():
    c = weak_coupling_energy(8)
    assert c[6] == Fraction(-289504827, 160)
    with pytest.raises(DomainError):
        weak_coupling_energy(9)
    with pytest.raises(DomainError):
        weak_coupling_energy(3, omega=2.0)


def test_weak_coupling_matches_numeric_energy():
    g = 1e-3
    coeffs = weak_coupling_energy(7)
    assert coeffs.evaluate(g) == pytest.approx(ground_energy(OscillatorParams(1.0, g)), abs=1e-13)


def test_frequency_series_consistency():
    w = weak_coupling_frequency(6)
    assert w[0] == 1 and w[1] == 3
    g = 1e-4
    from quartic_pms.spectrum import omega_bar
    assert w.evaluate(g) == pytest.approx(omega_bar(OscillatorParams(1.0, g)), abs=1e-12)


def test_bender_wu():
    assert bender_wu_asymptote(0) == pytest.approx(-math.sqrt(6) / math.pi)
    assert bender_wu_ratio(EXACT_RSPT_COEFFS, 5) == pytest.approx(0.64, abs=0.01)
    with pytest.raises(DomainError):
        bender_wu_ratio(EXACT_RSPT_COEFFS, 1)


def test_strong_coupling_derived_matches_large_g_energy():
    sc = strong_coupling_coeffs()
    g = 1e4
    y = g ** (-2.0 / 3.0)
    series = g ** (1.0 / 3.0) * (sc.alpha_n[0] + sc.alpha_n[1] * y + sc.alpha_n[2] * y * y)
    assert series == pytest.approx(ground_energy(OscillatorParams(1.0, g)), rel=1e-9)


def test_strong_coupling_conventions():
    derived = strong_coupling_coeffs(convention="derived")
    printed = strong_coupling_coeffs(convention="printed")
    assert derived.alpha_n[0] == pytest.approx(printed.alpha_n[0], rel=1e-14)
    assert derived.alpha_n[0] == pytest.approx(0.6393334, abs=1e-7)
    assert derived.alpha_n[1] == pytest.approx(0.1566711, abs=1e-7)
    assert derived.alpha_n[2] == pytest.approx(-0.0125569, abs=1e-7)
    with pytest.raises(DomainError):
        strong_coupling_coeffs(convention="other")

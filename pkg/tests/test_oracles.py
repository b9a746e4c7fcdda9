import math

import pytest
from hypothesis import given, strategies as st

from bubblerad import (
    YIELD_CONSTANT,
    YIELD_CONSTANT_ALT,
    LorentzianPulse,
    TrajectoryError,
    bound_check,
    check_window_supports_closed_form,
    lorentzian_form_factor_closed,
    lorentzian_photon_number,
    lorentzian_radiated_energy,
    observed_gap,
    peak_and_mean_omega,
    velocity_bound,
)


def test_yield_constant_values():
    assert YIELD_CONSTANT == pytest.approx(15 * math.pi ** 2 / 8, rel=1e-15)
    assert YIELD_CONSTANT_ALT == pytest.approx(15 * math.pi ** 2 / 16, rel=1e-15)
    assert YIELD_CONSTANT / YIELD_CONSTANT_ALT == 2.0


def test_closed_form_transform():
    b, g = 1e-5, 1e-9
    # zero frequency: pi * beta^2 * gamma^3
    assert lorentzian_form_factor_closed(b, g, 0.0) == pytest.approx(
        math.pi * b * b * g ** 3, rel=1e-15)
    # exponential frequency falloff with rate gamma
    v1 = lorentzian_form_factor_closed(b, g, 1.0 / g)
    assert v1 == pytest.approx(math.pi * b * b * g ** 3 / math.e, rel=1e-15)
    v2 = lorentzian_form_factor_closed(b, g, 2.0 / g)
    assert v2 / v1 == pytest.approx(1 / math.e, rel=1e-13)


def test_photon_number_quartic_in_beta():
    n1 = lorentzian_photon_number(1e-4, 1e-6)
    n2 = lorentzian_photon_number(1e-4, 2e-6)
    assert n2 / n1 == pytest.approx(16.0, rel=1e-13)
    assert n1 == pytest.approx(YIELD_CONSTANT * 1e-4 * 1e-24, rel=1e-15)


def test_photon_number_alternative_convention():
    n = lorentzian_photon_number(1e-4, 1e-5, YIELD_CONSTANT_ALT)
    assert n == pytest.approx(0.5 * lorentzian_photon_number(1e-4, 1e-5), rel=1e-15)


def test_radiated_energy_is_mean_energy_times_number():
    alpha, b, g = 1e-4, 1e-5, 1e-9
    hbar = 1.054571817e-34
    n = lorentzian_photon_number(alpha, b)
    assert lorentzian_radiated_energy(alpha, b, g, hbar) == pytest.approx(
        hbar * (3.0 / g) * n, rel=1e-15)


def test_peak_and_mean_omega():
    peak, mean = peak_and_mean_omega(1e-9)
    assert peak == pytest.approx(2.5e9, rel=1e-15)
    assert mean == pytest.approx(3.0e9, rel=1e-15)
    assert mean / peak == pytest.approx(1.2, rel=1e-15)
    with pytest.raises(ValueError):
        peak_and_mean_omega(0.0)


def test_velocity_bound_values():
    c = 299792458.0
    assert velocity_bound(c) == pytest.approx(0.1, rel=1e-15)
    assert velocity_bound(0.0) == 0.0
    assert velocity_bound(1500.0) == pytest.approx(
        0.1 * (1500.0 / c) ** 4, rel=1e-15)
    with pytest.raises(ValueError):
        velocity_bound(-1.0)


@given(st.floats(min_value=1e-3, max_value=1e7))
def test_velocity_bound_quartic_property(v):
    assert velocity_bound(2.0 * v) == pytest.approx(16.0 * velocity_bound(v),
                                                    rel=1e-12)


def test_observed_gap():
    assert observed_gap(1e-23, 1e5) == pytest.approx(1e28, rel=1e-12)
    assert observed_gap(0.0, 1e5) == math.inf
    assert observed_gap(0.0, 0.0) == 1.0
    with pytest.raises(ValueError):
        observed_gap(-1.0, 1e5)


def test_window_support_check():
    check_window_supports_closed_form(LorentzianPulse(2e-6, 1e-6, 1e-9, 100e-9))
    with pytest.raises(TrajectoryError):
        check_window_supports_closed_form(LorentzianPulse(2e-6, 1e-6, 1e-9, 10e-9))


def test_bound_check_on_moderate_pulse():
    report = bound_check(LorentzianPulse(2e-6, 1e-6, 1e-9, 100e-9))
    assert report.satisfied
    assert report.v_max == pytest.approx(761.5998412692024, rel=1e-10)
    assert report.bound_value == pytest.approx(velocity_bound(report.v_max),
                                               rel=1e-15)
    assert report.ratio == pytest.approx(
        report.photon_number / report.bound_value, rel=1e-12)
    assert 0.0 < report.ratio < 1.0


def test_bound_check_deep_dip_violates():
    # rmin/r0 = 0.95: the emitted number overshoots the quartic estimate
    report = bound_check(LorentzianPulse(2e-6, 1.9e-6, 1e-9, 100e-9))
    assert not report.satisfied
    assert report.ratio > 1.0

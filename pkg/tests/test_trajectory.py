import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bubblerad import (
    SPEED_OF_LIGHT,
    LorentzianPulse,
    TabulatedTrajectory,
    TrajectoryError,
    beta,
    characteristic_time,
    dynamic_area,
    max_surface_velocity,
    radius,
    surface_velocity,
)

R0, RMIN, GAMMA, PERIOD = 2e-6, 1e-6, 1e-9, 100e-9


def canonical():
    return LorentzianPulse(R0, RMIN, GAMMA, PERIOD)


def sampled(n=512, warped=True):
    pulse = canonical()
    if warped:
        u = np.linspace(-1.0, 1.0, n)
        ts = pulse.center + GAMMA * np.tan(u * math.atan(0.5 * PERIOD / GAMMA))
        ts[0], ts[-1] = 0.0, PERIOD
    else:
        ts = np.linspace(0.0, PERIOD, n)
    rs = np.sqrt(pulse.squared_radius(ts))
    return ts, rs


class TestLorentzianPulse:
    def test_validation(self):
        for bad in [(-1e-6, 1e-6), (1e-6, 2e-6), (1e-6, 1e-6), (2e-6, 0.0)]:
            r0, rmin = bad[0], bad[1]
            with pytest.raises(TrajectoryError):
                LorentzianPulse(r0, rmin, GAMMA, PERIOD)
        with pytest.raises(TrajectoryError):
            LorentzianPulse(R0, RMIN, 0.0, PERIOD)
        with pytest.raises(TrajectoryError):
            LorentzianPulse(R0, RMIN, GAMMA, -1.0)
        with pytest.raises(TrajectoryError):
            LorentzianPulse(R0, RMIN, GAMMA, PERIOD, center_offset=math.nan)

    def test_center_and_amplitude(self):
        pulse = canonical()
        assert pulse.center == 50e-9
        assert pulse.dip_amplitude == pytest.approx(3e-12)
        shifted = LorentzianPulse(R0, RMIN, GAMMA, PERIOD, center_offset=5e-9)
        assert shifted.center == pytest.approx(55e-9)

    def test_radius_values(self):
        pulse = canonical()
        assert radius(pulse, pulse.center) == pytest.approx(RMIN, rel=1e-14)
        # half depth one half-width away from the center
        r_half = radius(pulse, pulse.center + GAMMA)
        assert r_half ** 2 == pytest.approx(R0 ** 2 - 1.5e-12, rel=1e-14)
        assert radius(pulse, 0.0) == pytest.approx(R0, rel=1e-3)

    def test_domain_enforced(self):
        pulse = canonical()
        with pytest.raises(TrajectoryError):
            radius(pulse, -1e-12)
        with pytest.raises(TrajectoryError):
            radius(pulse, PERIOD * 1.001)

    def test_dynamic_area_is_squared_radius_drop(self):
        pulse = canonical()
        tau = pulse.center + 0.3 * GAMMA
        expect = pulse.squared_radius(tau) - R0 ** 2
        assert dynamic_area(pulse, tau) == pytest.approx(float(expect), rel=1e-14)
        assert dynamic_area(pulse, pulse.center) == pytest.approx(-3e-12, rel=1e-14)

    def test_surface_velocity_reference_point(self):
        # analytic derivative one half-width after the center
        pulse = canonical()
        v = surface_velocity(pulse, pulse.center + GAMMA)
        assert v == pytest.approx(474.34164902525544, rel=1e-12)
        # symmetric point collapses inward at the same speed
        v_in = surface_velocity(pulse, pulse.center - GAMMA)
        assert v_in == pytest.approx(-v, rel=1e-12)

    def test_max_surface_velocity(self):
        assert max_surface_velocity(canonical()) == pytest.approx(
            761.5998412692024, rel=1e-10)

    def test_beta_definition(self):
        b = beta(canonical())
        assert b == pytest.approx(
            math.sqrt(3e-12) / (SPEED_OF_LIGHT * GAMMA), rel=1e-15)
        assert b == pytest.approx(5.777499604639411e-6, rel=1e-12)


class TestTabulatedTrajectory:
    def test_validation(self):
        t = np.linspace(0, 1, 16)
        r = np.full(16, 1e-6)
        with pytest.raises(TrajectoryError):
            TabulatedTrajectory(t[:7], r[:7])  # too few samples
        with pytest.raises(TrajectoryError):
            TabulatedTrajectory(t, r[:-1])  # length mismatch
        bad_t = t.copy()
        bad_t[5] = bad_t[4]
        with pytest.raises(TrajectoryError):
            TabulatedTrajectory(bad_t, r)  # nonmonotonic
        bad_r = r.copy()
        bad_r[3] = 0.0
        with pytest.raises(TrajectoryError):
            TabulatedTrajectory(t, bad_r)  # nonpositive radius
        bad_r = r.copy()
        bad_r[3] = math.inf
        with pytest.raises(TrajectoryError):
            TabulatedTrajectory(t, bad_r)

    def test_interpolation_hits_samples(self):
        ts, rs = sampled(128)
        table = TabulatedTrajectory(ts, rs)
        out = radius(table, ts[40])
        assert out == pytest.approx(rs[40], rel=1e-15)

    def test_baseline_defaults_to_edge_mean(self):
        ts, rs = sampled(200)
        table = TabulatedTrajectory(ts, rs)
        edge = 200 // 20
        expect = float(np.mean(np.concatenate([rs[:edge], rs[-edge:]])))
        assert table.baseline_r0 == pytest.approx(expect, rel=1e-15)
        pinned = TabulatedTrajectory(ts, rs, baseline_r0=R0)
        assert pinned.baseline_r0 == R0

    def test_dynamic_area_uses_baseline(self):
        ts, rs = sampled(256)
        table = TabulatedTrajectory(ts, rs, baseline_r0=R0)
        mid = canonical().center
        assert dynamic_area(table, mid) == pytest.approx(-3e-12, rel=1e-6)

    def test_smoothing_reduces_noise(self):
        rng = np.random.default_rng(7)
        ts, rs = sampled(512)
        noisy = rs * (1.0 + 1e-4 * rng.standard_normal(rs.size))
        raw = TabulatedTrajectory(ts, noisy, baseline_r0=R0)
        smooth = TabulatedTrajectory(ts, noisy, baseline_r0=R0, smooth_window=9)
        assert smooth.smooth_window == 9
        # smoothing must cut the velocity overshoot caused by sample noise
        assert max_surface_velocity(smooth) < max_surface_velocity(raw)

    def test_bad_smooth_window(self):
        ts, rs = sampled(64)
        with pytest.raises(TrajectoryError):
            TabulatedTrajectory(ts, rs, smooth_window=4)

    def test_max_velocity_close_to_analytic(self):
        ts, rs = sampled(1024)
        table = TabulatedTrajectory(ts, rs, baseline_r0=R0)
        assert max_surface_velocity(table) == pytest.approx(
            761.5998412692024, rel=1e-3)

    def test_beta_rejects_tabulated(self):
        ts, rs = sampled(64)
        with pytest.raises(TrajectoryError):
            beta(TabulatedTrajectory(ts, rs))


class TestCharacteristicTime:
    def test_micron_per_km_s_is_one_ns_exactly(self):
        assert characteristic_time(1e-6, 1000.0) == 1e-9

    def test_generic_quotient(self):
        assert characteristic_time(3.0, 2.0) == 1.5
        assert characteristic_time(1.0, 3.0) == pytest.approx(1 / 3, rel=1e-15)

    def test_rejects_nonpositive(self):
        with pytest.raises(TrajectoryError):
            characteristic_time(0.0, 1.0)
        with pytest.raises(TrajectoryError):
            characteristic_time(1.0, -2.0)


@given(
    scale=st.floats(min_value=1e-3, max_value=1e3),
    x=st.floats(min_value=0.05, max_value=0.95),
)
def test_beta_invariant_under_joint_scaling(scale, x):
    # beta depends on amplitude/(c*gamma); scaling radii by s and gamma by s
    # leaves it unchanged
    base = LorentzianPulse(2e-6, x * 2e-6, 1e-9, 100e-9)
    scaled = LorentzianPulse(2e-6 * scale, x * 2e-6 * scale,
                             1e-9 * scale, 100e-9 * scale)
    assert beta(scaled) == pytest.approx(beta(base), rel=1e-12)


@given(st.floats(min_value=1e-9, max_value=1e-3),
       st.floats(min_value=1.0, max_value=1e6))
def test_characteristic_time_positive(radius_scale, velocity_scale):
    t = characteristic_time(radius_scale, velocity_scale)
    assert t > 0.0
    assert t == pytest.approx(radius_scale / velocity_scale, rel=1e-12)

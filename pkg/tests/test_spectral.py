import math

import numpy as np
import pytest

from bubblerad import (
    SPEED_OF_LIGHT,
    LorentzianPulse,
    PhysicalConstants,
    QuadratureSettings,
    TabulatedTrajectory,
    evaluate,
    form_factor,
    lorentzian_form_factor_closed,
    lorentzian_photon_number,
    lorentzian_radiated_energy,
    photon_number,
    radiated_energy,
    spectral_density,
    spectrum_table,
    beta,
)

R0, RMIN, GAMMA, PERIOD = 2e-6, 1e-6, 1e-9, 100e-9
ALPHA = 1e-4


def canonical():
    return LorentzianPulse(R0, RMIN, GAMMA, PERIOD)


def warped_table(n=256):
    pulse = canonical()
    u = np.linspace(-1.0, 1.0, n)
    ts = pulse.center + GAMMA * np.tan(u * math.atan(0.5 * PERIOD / GAMMA))
    ts[0], ts[-1] = 0.0, PERIOD
    rs = np.sqrt(pulse.squared_radius(ts))
    return TabulatedTrajectory(ts, rs, baseline_r0=R0)


class TestQuadratureSettings:
    def test_defaults(self):
        s = QuadratureSettings()
        assert s.rel_tol == 1e-9
        assert s.abs_tol == 1e-30

    def test_validation(self):
        with pytest.raises(ValueError):
            QuadratureSettings(rel_tol=0.0)
        with pytest.raises(ValueError):
            QuadratureSettings(rel_tol=2.0)
        with pytest.raises(ValueError):
            QuadratureSettings(abs_tol=-1.0)
        with pytest.raises(ValueError):
            QuadratureSettings(max_panels=0)
        with pytest.raises(ValueError):
            QuadratureSettings(oscillation_resolution=1.0)
        with pytest.raises(ValueError):
            QuadratureSettings(tail_rel_threshold=0.0)


class TestFormFactor:
    def test_zero_frequency(self):
        pulse = canonical()
        b = beta(pulse)
        f0 = form_factor(pulse, 0.0)
        assert f0.real == pytest.approx(
            -lorentzian_form_factor_closed(b, GAMMA, 0.0), rel=1e-9)
        assert abs(f0.imag) <= 1e-12 * abs(f0.real)

    def test_exponential_falloff(self):
        pulse = canonical()
        b = beta(pulse)
        for om_g in (0.5, 1.0, 2.0, 5.0, 10.0):
            om = om_g / GAMMA
            assert abs(form_factor(pulse, om)) == pytest.approx(
                lorentzian_form_factor_closed(b, GAMMA, om), rel=1e-7), om_g

    def test_array_input(self):
        pulse = canonical()
        oms = np.array([0.0, 1e9, 2e9])
        vals = form_factor(pulse, oms)
        assert vals.shape == (3,)
        assert vals[1] == pytest.approx(form_factor(pulse, 1e9), rel=1e-12)

    def test_rejects_bad_frequency(self):
        pulse = canonical()
        with pytest.raises(ValueError):
            form_factor(pulse, -1.0)
        with pytest.raises(ValueError):
            form_factor(pulse, math.nan)

    def test_translation_leaves_magnitude(self):
        pulse = canonical()
        shifted = LorentzianPulse(R0, RMIN, GAMMA, PERIOD, center_offset=7e-9)
        om = 3.0 / GAMMA
        assert abs(form_factor(shifted, om)) == pytest.approx(
            abs(form_factor(pulse, om)), rel=1e-8)


class TestSpectralDensity:
    def test_matches_definition(self):
        pulse = canonical()
        om = 2.0 / GAMMA
        f = form_factor(pulse, om)
        expect = ALPHA * om ** 5 * abs(f) ** 2
        assert spectral_density(pulse, om) == pytest.approx(expect, rel=1e-12)

    def test_zero_at_zero_frequency(self):
        assert spectral_density(canonical(), 0.0) == 0.0


class TestEvaluate:
    def test_matches_closed_form(self):
        pulse = canonical()
        b = beta(pulse)
        result = evaluate(pulse)
        assert result.photon_number == pytest.approx(
            lorentzian_photon_number(ALPHA, b), rel=1e-8)
        assert result.radiated_energy == pytest.approx(
            lorentzian_radiated_energy(ALPHA, b, GAMMA, 1.054571817e-34),
            rel=1e-8)
        assert result.v_max == pytest.approx(761.5998412692024, rel=1e-10)
        assert result.beta_effective == pytest.approx(b, rel=1e-12)
        assert not result.supraluminal
        assert result.quadrature_error_estimate < 1e-6 * result.photon_number

    def test_wrappers_agree(self):
        pulse = canonical()
        result = evaluate(pulse)
        assert photon_number(pulse) == result.photon_number
        assert radiated_energy(pulse) == result.radiated_energy

    def test_alpha_scales_linearly(self):
        pulse = canonical()
        n1 = photon_number(pulse, PhysicalConstants(alpha=1e-4))
        n2 = photon_number(pulse, PhysicalConstants(alpha=2e-4))
        assert n2 == pytest.approx(2.0 * n1, rel=1e-12)

    def test_supraluminal_flag(self):
        fast = LorentzianPulse(2.0, 1.0, 1e-9, 100e-9)
        result = evaluate(fast)
        assert result.supraluminal
        assert result.v_max >= SPEED_OF_LIGHT

    def test_tabulated_reproduces_analytic(self):
        result = evaluate(warped_table(256))
        expect = photon_number(canonical())
        assert result.photon_number == pytest.approx(expect, rel=1e-3)
        assert result.v_max == pytest.approx(761.5998412692024, rel=1e-3)

    def test_constant_tabulated_trace_is_silent(self):
        ts = np.linspace(0.0, 1e-7, 64)
        rs = np.full(64, 2e-6)
        result = evaluate(TabulatedTrajectory(ts, rs))
        assert result.photon_number == 0.0
        assert result.radiated_energy == 0.0
        assert result.v_max == 0.0
        assert result.quadrature_error_estimate == 0.0

    def test_loose_settings_shift_result_within_tolerance(self):
        pulse = canonical()
        loose = QuadratureSettings(rel_tol=1e-6, tail_rel_threshold=1e-7)
        n_tight = photon_number(pulse)
        n_loose = photon_number(pulse, settings=loose)
        assert n_loose == pytest.approx(n_tight, rel=1e-5)


class TestSpectrumTable:
    def test_peak_mean_total(self):
        pulse = canonical()
        spectrum = spectrum_table(pulse, 20.0 / GAMMA, 200)
        assert spectrum.peak_omega == pytest.approx(2.5 / GAMMA, rel=1e-6)
        assert spectrum.mean_omega == pytest.approx(3.0 / GAMMA, rel=1e-6)
        assert spectrum.total == pytest.approx(photon_number(pulse), rel=1e-6)
        assert spectrum.omegas.shape == spectrum.densities.shape == (200,)
        assert spectrum.densities[0] == 0.0
        assert np.all(spectrum.densities >= 0.0)

    def test_grid_endpoints(self):
        spectrum = spectrum_table(canonical(), 1e10, 50)
        assert spectrum.omegas[0] == 0.0
        assert spectrum.omegas[-1] == 1e10

    def test_densities_match_pointwise(self):
        pulse = canonical()
        spectrum = spectrum_table(pulse, 1e10, 21)
        k = 13
        assert spectrum.densities[k] == pytest.approx(
            spectral_density(pulse, spectrum.omegas[k]), rel=1e-6)

    def test_validation(self):
        with pytest.raises(ValueError):
            spectrum_table(canonical(), 0.0, 10)
        with pytest.raises(ValueError):
            spectrum_table(canonical(), 1e9, 1)


class TestInvariances:
    def test_time_compression_quartic(self):
        base = photon_number(canonical())
        for s in (2.0, 10.0):
            squeezed = LorentzianPulse(R0, RMIN, GAMMA / s, PERIOD / s)
            assert photon_number(squeezed) == pytest.approx(
                s ** 4 * base, rel=1e-8), s

    def test_amplitude_square_law(self):
        base = LorentzianPulse(R0, 0.9 * R0, GAMMA, PERIOD)
        n_base = photon_number(base)
        amp = base.dip_amplitude
        for lam in (0.5, 3.0):
            rmin = math.sqrt(R0 ** 2 - lam * amp)
            scaled = LorentzianPulse(R0, rmin, GAMMA, PERIOD)
            assert photon_number(scaled) == pytest.approx(
                lam ** 2 * n_base, rel=1e-8), lam

    def test_translation_invariance(self):
        base = photon_number(canonical())
        shifted = LorentzianPulse(R0, RMIN, GAMMA, PERIOD, center_offset=5e-9)
        assert photon_number(shifted) == pytest.approx(base, rel=1e-9)

    def test_gamma_invariance_at_fixed_beta(self):
        b, x = 1e-5, 0.5
        values = []
        for g in (1e-10, 1e-9, 1e-8):
            r0 = b * SPEED_OF_LIGHT * g / math.sqrt(1.0 - x * x)
            values.append(photon_number(LorentzianPulse(r0, x * r0, g, 100 * g)))
        assert max(values) / min(values) - 1.0 < 1e-8

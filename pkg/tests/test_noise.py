"""Thermal-noise formulas against independently computed values."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stochbar.noise import (
    BOLTZMANN_J_PER_K,
    NoisePhysics,
    SnrReport,
    noise_power_from_current,
    sample_noise_current,
    snr_db,
    thermal_noise_rms,
)


class TestThermalNoiseRms:
    def test_frozen_reference_value(self):
        # sqrt(4 * 1.380649e-23 * 300 * 1e-4 * 1e9), computed independently
        physics = NoisePhysics(temperature_k=300.0, bandwidth_hz=1.0e9)
        got = thermal_noise_rms(1.0e-4, physics)
        assert got == pytest.approx(4.0703547756921635e-08, rel=1e-12)

    def test_matches_direct_formula(self):
        physics = NoisePhysics(temperature_k=250.0, bandwidth_hz=5.0e8)
        g = 2.7e-6
        want = math.sqrt(4.0 * BOLTZMANN_J_PER_K * 250.0 * g * 5.0e8)
        assert thermal_noise_rms(g, physics) == pytest.approx(want, rel=1e-12)

    def test_zero_conductance_is_silent(self):
        assert thermal_noise_rms(0.0, NoisePhysics()) == 0.0

    def test_zero_bandwidth_disables_noise(self):
        physics = NoisePhysics(bandwidth_hz=0.0)
        assert thermal_noise_rms(1e-4, physics) == 0.0

    def test_doubling_bandwidth_scales_sqrt2(self):
        p1 = NoisePhysics(bandwidth_hz=1e9)
        p2 = NoisePhysics(bandwidth_hz=2e9)
        r1 = thermal_noise_rms(1e-5, p1)
        r2 = thermal_noise_rms(1e-5, p2)
        assert r2 / r1 == pytest.approx(math.sqrt(2.0), rel=1e-12)

    def test_array_input_keeps_shape(self):
        g = np.array([[1e-6, 2e-6], [0.0, 4e-6]])
        out = thermal_noise_rms(g, NoisePhysics())
        assert out.shape == g.shape
        assert out[1, 0] == 0.0
        # variance additivity: rms(a)^2 + rms(b)^2 == rms(a+b)^2
        assert out[0, 0] ** 2 + out[0, 1] ** 2 == pytest.approx(
            thermal_noise_rms(3e-6, NoisePhysics()) ** 2, rel=1e-12
        )

    def test_negative_conductance_rejected(self):
        with pytest.raises(ValueError, match="non-negative"):
            thermal_noise_rms(-1e-6, NoisePhysics())


class TestNoisePhysicsValidation:
    def test_nonpositive_temperature_rejected(self):
        with pytest.raises(ValueError, match="temperature"):
            NoisePhysics(temperature_k=0.0)

    def test_negative_bandwidth_rejected(self):
        with pytest.raises(ValueError, match="bandwidth"):
            NoisePhysics(bandwidth_hz=-1.0)


class TestPowerAndSnr:
    def test_power_from_current(self):
        # 1 uA RMS into 1 kOhm -> 1e-9 W
        assert noise_power_from_current(1e-6, 1e3) == pytest.approx(1e-9, rel=1e-12)

    def test_power_requires_positive_resistance(self):
        with pytest.raises(ValueError, match="resistance"):
            noise_power_from_current(1e-6, 0.0)

    def test_equal_powers_zero_db(self):
        assert snr_db(1e-9, 1e-9) == pytest.approx(0.0, abs=1e-12)

    def test_ratio_two_is_3_0103_db(self):
        assert snr_db(2e-9, 1e-9) == pytest.approx(3.010299956639812, rel=1e-12)

    def test_zero_noise_gives_inf(self):
        assert snr_db(1e-9, 0.0) == math.inf

    def test_bad_powers_rejected(self):
        with pytest.raises(ValueError):
            snr_db(0.0, 1e-9)
        with pytest.raises(ValueError):
            snr_db(1e-9, -1e-12)

    @given(
        ps=st.floats(1e-15, 1e-3), pn=st.floats(1e-15, 1e-3), c=st.floats(1e-3, 1e3)
    )
    @settings(max_examples=50, deadline=None)
    def test_scale_invariance(self, ps, pn, c):
        assert snr_db(c * ps, c * pn) == pytest.approx(snr_db(ps, pn), abs=1e-9)

    def test_report_bundles_ratio(self):
        rep = SnrReport.from_powers(4e-9, 1e-9)
        assert rep.signal_power_w == 4e-9
        assert rep.snr_db == pytest.approx(10 * math.log10(4.0), rel=1e-12)


class TestSampling:
    def test_sample_statistics_match_rms(self, rng):
        physics = NoisePhysics(bandwidth_hz=1e9)
        g = 1e-5
        rms = thermal_noise_rms(g, physics)
        draws = sample_noise_current(np.full(1_000_000, g), physics, rng)
        assert abs(draws.mean()) < 4 * rms / 1000  # 4 SE of the mean
        assert draws.std() == pytest.approx(rms, rel=0.01)

    def test_scalar_draw_returns_float(self, rng):
        out = sample_noise_current(1e-6, NoisePhysics(), rng)
        assert isinstance(out, float)

    def test_zero_bandwidth_draws_zero(self, rng):
        out = sample_noise_current(np.ones(16) * 1e-6, NoisePhysics(bandwidth_hz=0.0), rng)
        assert np.all(out == 0.0)

    def test_same_seed_same_draws(self):
        physics = NoisePhysics()
        a = sample_noise_current(np.ones(32) * 1e-6, physics, np.random.default_rng(9))
        b = sample_noise_current(np.ones(32) * 1e-6, physics, np.random.default_rng(9))
        np.testing.assert_array_equal(a, b)

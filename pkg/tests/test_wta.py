"""Winner-take-all race: invariants, oracles, soft-max convergence."""

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import expit, softmax
from scipy.stats import norm

from stochbar.neurons import (
    WTAConfig,
    calibrate_bandwidth,
    mac_source,
    reference_softmax,
    wta_decide,
    wta_empirical_distribution,
)
from stochbar.noise import BOLTZMANN_J_PER_K
from test_neurons import logit_crossbar


def race_setup(z, lambda_out=0.3, **cfg_kw):
    cb = logit_crossbar(z)
    physics = calibrate_bandwidth(cb, lambda_out)
    src = mac_source(cb, np.ones(cb.n_rows), physics)
    return src, cb, physics, WTAConfig(**cfg_kw)


class TestConfig:
    def test_defaults_sit_in_softmax_regime(self):
        cfg = WTAConfig()
        assert cfg.v_th0 == 6.0
        assert cfg.threshold_jitter == 1.0
        assert cfg.max_steps == 1000

    def test_invalid_values_rejected(self):
        with pytest.raises(ValueError, match="max_steps"):
            WTAConfig(max_steps=0)
        with pytest.raises(ValueError, match="jitter"):
            WTAConfig(threshold_jitter=-0.5)
        with pytest.raises(ValueError, match="rail"):
            WTAConfig(v_th0=6.0, v_supply=5.0)


class TestRaceInvariants:
    def test_winner_crossed_on_deciding_step(self, rng):
        src, _, _, cfg = race_setup([2.0, 0.0, -1.0], v_th0=2.0)
        for _ in range(200):
            rec = wta_decide(src, cfg, rng)
            if rec.winner is not None:
                assert rec.fired[rec.winner]
                assert 1 <= rec.n_steps <= cfg.max_steps

    def test_abstention_when_threshold_unreachable(self, rng):
        # jitter off and threshold far above any achievable output
        src, _, _, cfg = race_setup(
            [1.0, 0.5], lambda_out=0.1, v_th0=8.0, threshold_jitter=0.0, max_steps=25
        )
        rec = wta_decide(src, cfg, rng)
        assert rec.winner is None
        assert rec.abstained
        assert rec.n_steps == 25
        assert not rec.fired.any()

    def test_noise_free_race_picks_argmax_immediately(self, rng):
        src, _, physics, _ = race_setup([3.0, 1.0, -2.0], lambda_out=0.0)
        assert physics.bandwidth_hz == 0.0
        cfg = WTAConfig(v_th0=0.5, threshold_jitter=0.0)
        rec = wta_decide(src, cfg, rng)
        assert rec.winner == 0
        assert rec.n_steps == 1
        np.testing.assert_array_equal(rec.fired, [True, True, False])

    def test_same_stream_reproduces_decision(self):
        src, _, _, cfg = race_setup([1.0, 0.0, -1.0], v_th0=3.0)
        a = wta_decide(src, cfg, np.random.default_rng(21))
        b = wta_decide(src, cfg, np.random.default_rng(21))
        assert a.winner == b.winner
        assert a.n_steps == b.n_steps

    def test_trace_covers_every_step(self, rng):
        src, _, _, cfg = race_setup([0.5, -0.5], v_th0=3.0)
        trace = []
        rec = wta_decide(src, cfg, rng, trace=trace)
        assert len(trace) == rec.n_steps
        steps = [t[0] for t in trace]
        assert steps == list(range(1, rec.n_steps + 1))
        values, thetas = trace[-1][1], trace[-1][2]
        assert values.shape == thetas.shape == (2,)


class TestSingleStepCrossingOracle:
    def test_crossing_frequency_matches_quadrature(self, rng):
        # P(cross) = E_t[ logistic_cdf(z + sigma*t - v_th0) ], t ~ N(0,1);
        # sigma recomputed from raw physics, integral from scipy.quad
        z = np.array([1.0, 0.0, -1.0])
        v_th0 = 2.5
        src, cb, physics, _ = race_setup(z, v_th0=v_th0, max_steps=1)
        cfg = WTAConfig(v_th0=v_th0, max_steps=1)
        unit = cb.map_spec.signal_unit_a
        four_kt_df = 4 * BOLTZMANN_J_PER_K * physics.temperature_k * physics.bandwidth_hz
        data_sums = cb.conductances_s.sum(axis=0)
        ref_sum = cb.n_rows * cb.map_spec.g_ref_s
        sigma = np.sqrt(four_kt_df * (data_sums + ref_sum)) / unit

        def p_cross(zj, sd):
            f = lambda t: norm.pdf(t) * expit(zj + sd * t - v_th0)
            return quad(f, -10, 10)[0]

        want = np.array([p_cross(zj, sd) for zj, sd in zip(z, sigma)])
        n = 20_000
        crossed = np.zeros(3)
        for _ in range(n):
            trace = []
            wta_decide(src, cfg, rng, trace=trace)
            _, values, thetas = trace[0]
            crossed += values > thetas
        freq = crossed / n
        se = np.sqrt(want * (1 - want) / n)
        np.testing.assert_array_less(np.abs(freq - want), 4 * se + 1e-4)

    def test_step_counts_are_geometric(self, rng):
        # mean steps consistent with the first-step resolution rate
        src, _, _, cfg = race_setup([1.0, 0.0], v_th0=2.0)
        n = 4000
        recs = [wta_decide(src, cfg, rng) for _ in range(n)]
        steps = np.array([r.n_steps for r in recs])
        first_step = (steps == 1).mean()
        assert first_step > 0.05
        want_mean = 1.0 / first_step
        assert steps.mean() == pytest.approx(want_mean, rel=0.15)


class TestWinDistribution:
    def test_dominant_logit_wins_overwhelmingly(self, rng):
        src, _, _, cfg = race_setup([5.0, 0.0, 0.0, 0.0], v_th0=4.0)
        recs = [wta_decide(src, cfg, rng) for _ in range(500)]
        dist, abstained = wta_empirical_distribution(recs, 4)
        assert abstained == 0
        assert dist[0] >= 0.9

    def test_identical_logits_split_evenly(self, rng):
        src, _, _, cfg = race_setup([0.0, 0.0], v_th0=2.0)
        recs = [wta_decide(src, cfg, rng) for _ in range(10_000)]
        dist, _ = wta_empirical_distribution(recs, 2)
        assert dist[0] == pytest.approx(0.5, abs=0.02)

    def test_three_way_softmax_example(self, rng):
        # logits (ln 2, 0, 0) -> soft-max (0.5, 0.25, 0.25)
        z = [np.log(2.0), 0.0, 0.0]
        src, _, _, cfg = race_setup(z, v_th0=5.0)
        recs = [wta_decide(src, cfg, rng) for _ in range(4000)]
        dist, abstained = wta_empirical_distribution(recs, 3)
        assert abstained == 0
        tv = 0.5 * np.abs(dist - np.array([0.5, 0.25, 0.25])).sum()
        assert tv <= 0.02


class TestEmpiricalDistributionHelper:
    def test_counts_and_abstentions(self):
        from stochbar.neurons import TrialRecord

        recs = [
            TrialRecord(winner=0, n_steps=1, fired=np.array([True, False])),
            TrialRecord(winner=1, n_steps=2, fired=np.array([False, True])),
            TrialRecord(winner=0, n_steps=1, fired=np.array([True, False])),
            TrialRecord(winner=None, n_steps=5, fired=np.array([False, False])),
        ]
        dist, abstained = wta_empirical_distribution(recs, 2)
        np.testing.assert_allclose(dist, [2 / 3, 1 / 3])
        assert abstained == 1

    def test_empty_input_raises(self):
        with pytest.raises(ValueError, match="no trial records"):
            wta_empirical_distribution([], 2)

    def test_all_abstained_raises(self):
        from stochbar.neurons import TrialRecord

        recs = [TrialRecord(winner=None, n_steps=3, fired=np.zeros(2, dtype=bool))] * 4
        with pytest.raises(ValueError, match="abstained"):
            wta_empirical_distribution(recs, 2)


class TestReferenceSoftmax:
    def test_matches_scipy(self, rng):
        z = rng.normal(0, 2, 6)
        np.testing.assert_allclose(reference_softmax(z), softmax(z), rtol=1e-12)

    def test_handles_large_logits(self):
        out = reference_softmax([1000.0, 999.0])
        assert np.isfinite(out).all()
        assert out.sum() == pytest.approx(1.0)

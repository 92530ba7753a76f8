"""Network building, stochastic forwards, and majority voting."""

import numpy as np
import pytest

from stochbar.errors import ConfigError
from stochbar.network import (
    CumulativeVote,
    NetworkSpec,
    build_network,
    forward_reference,
    forward_stochastic,
    infer_majority,
    stochastic_winners,
    tally_votes,
)
from stochbar.neurons import SigmoidNeuronConfig, WTAConfig
from stochbar.rng import substream


def tiny_net(w1_scale=1.0, w2_scale=1.0, **spec_kw):
    rng = np.random.default_rng(3)
    w1 = rng.normal(0, 1.0, (4, 3)) * w1_scale
    w2 = rng.normal(0, 1.0, (4, 2)) * w2_scale  # 3 hidden + bias row
    spec = NetworkSpec(dims=(4, 3, 2), **spec_kw)
    return build_network([w1, w2], spec), (w1, w2)


class TestSpecAndBuild:
    def test_dims_validation(self):
        with pytest.raises(ConfigError, match="at least"):
            NetworkSpec(dims=(5,))
        with pytest.raises(ConfigError, match="positive"):
            NetworkSpec(dims=(5, 0, 2))
        with pytest.raises(ConfigError, match="2 classes"):
            NetworkSpec(dims=(5, 3, 1))

    def test_shape_mismatch_names_layer(self):
        spec = NetworkSpec(dims=(4, 3, 2))
        good = [np.zeros((4, 3)), np.zeros((4, 2))]
        with pytest.raises(ConfigError, match="layer 1"):
            build_network([good[0], np.zeros((3, 2))], spec)  # forgot bias row
        with pytest.raises(ConfigError, match="layer 0"):
            build_network([np.zeros((5, 3)), good[1]], spec)

    def test_wrong_matrix_count(self):
        spec = NetworkSpec(dims=(4, 3, 2))
        with pytest.raises(ConfigError, match="weight matrices"):
            build_network([np.zeros((4, 3))], spec)

    def test_bias_rows_on_later_layers_only(self):
        net, _ = tiny_net()
        assert not net.layers[0].has_bias
        assert net.layers[1].has_bias
        assert net.layers[0].crossbar.n_rows == 4
        assert net.layers[1].crossbar.n_rows == 4  # 3 hidden + bias

    def test_rescaling_compensates_noise_and_thresholds(self):
        # scaling all output weights by 10 must scale the layer-local race
        # config down by 10, leaving behavior in raw-logit units unchanged
        net1, _ = tiny_net(w2_scale=0.1)
        net2, _ = tiny_net(w2_scale=1.0)
        l1, l2 = net1.layers[-1], net2.layers[-1]
        ratio = l2.scale / l1.scale
        assert ratio == pytest.approx(10.0, rel=1e-9)
        assert l1.wta.v_th0 / l2.wta.v_th0 == pytest.approx(ratio, rel=1e-9)
        assert l1.noise_lambda_n / l2.noise_lambda_n == pytest.approx(ratio, rel=1e-9)

    def test_desk_scale_dims_build(self, desk_weights):
        net = build_network(desk_weights, NetworkSpec(dims=(784, 64, 32, 10)))
        assert [l.crossbar.n_rows for l in net.layers] == [784, 65, 33]
        assert net.n_classes == 10


class TestForwardStochastic:
    def test_zero_logits_fire_half(self):
        # zero input and zero bias weights -> every hidden comparator at
        # z = 0 -> firing frequency 0.5
        spec = NetworkSpec(dims=(3, 4, 2))
        weights = [np.zeros((3, 4)), np.full((5, 2), 0.2)]
        net = build_network(weights, spec)
        rng = substream(6)
        fired = np.zeros(4)
        n = 4000
        for _ in range(n):
            _, hidden = forward_stochastic(net, np.zeros(3), rng, return_hidden=True)
            fired += hidden[0]
        np.testing.assert_allclose(fired / n, 0.5, atol=0.035)

    def test_noise_free_equals_thresholded_float_pass(self):
        rng_w = np.random.default_rng(8)
        w1 = rng_w.normal(0, 1, (5, 4))
        w2 = rng_w.normal(0, 1, (5, 3))
        spec = NetworkSpec(
            dims=(5, 4, 3),
            hidden=SigmoidNeuronConfig(lambda_target=1e-9),
            output_lambda=0.0,
            wta=WTAConfig(v_th0=0.0, threshold_jitter=0.0),
        )
        net = build_network([w1, w2], spec)
        x = np.linspace(0, 1, 5)
        rec, hidden = forward_stochastic(net, x, substream(1), return_hidden=True)
        h_float = (x @ w1 > 0).astype(float)
        np.testing.assert_array_equal(hidden[0], h_float.astype(bool))
        z_out = np.concatenate([h_float, [1.0]]) @ w2
        if (z_out > 0).any():
            assert rec.winner == int(np.argmax(z_out))
        else:
            assert rec.winner is None

    def test_fixed_seed_reproduces_record(self):
        net, _ = tiny_net()
        x = np.array([0.1, 0.5, 0.9, 0.3])
        a = forward_stochastic(net, x, substream(33))
        b = forward_stochastic(net, x, substream(33))
        assert a.winner == b.winner
        assert a.n_steps == b.n_steps

    def test_input_validation(self):
        net, _ = tiny_net()
        with pytest.raises(ValueError, match="input length"):
            forward_stochastic(net, np.ones(3), substream(0))
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            forward_stochastic(net, np.array([0.2, 0.4, 1.5, 0.0]), substream(0))


class TestMajorityVote:
    def test_single_trial_vote_is_that_winner(self):
        net, _ = tiny_net()
        x = np.array([0.9, 0.1, 0.4, 0.6])
        vote = infer_majority(net, x, 1, 17)
        assert vote.n_trials == 1
        assert vote.counts.sum() + vote.abstentions == 1
        if vote.abstentions == 0:
            assert vote.predicted_class == int(np.argmax(vote.counts))
            assert vote.is_valid

    def test_counts_add_up(self):
        net, _ = tiny_net()
        x = np.array([0.5, 0.5, 0.5, 0.5])
        vote = infer_majority(net, x, 64, 2)
        assert vote.counts.sum() + vote.abstentions == 64

    def test_all_abstain_flags_invalid(self):
        # unreachable threshold, no noise, no jitter -> nothing ever fires
        spec = NetworkSpec(
            dims=(3, 2),
            hidden=SigmoidNeuronConfig(lambda_target=1e-9),
            output_lambda=0.0,
            wta=WTAConfig(v_th0=11.0, v_supply=12.0, threshold_jitter=0.0, max_steps=5),
        )
        net = build_network([np.full((3, 2), 0.01)], spec)
        vote = infer_majority(net, np.ones(3), 8, 4)
        assert vote.abstentions == 8
        assert not vote.is_valid
        assert vote.predicted_class is None

    def test_count_tie_breaks_to_earliest_win(self):
        # classes 1 and 2 tie at two wins each; 2 won a trial first
        vote = tally_votes(np.array([2, 1, 1, 2]), 3)
        assert vote.predicted_class == 2
        assert tally_votes(np.array([1, 2, 2, 1]), 3).predicted_class == 1

    def test_tie_without_order_falls_back_to_lowest_index(self):
        vote = CumulativeVote(counts=np.array([1, 0, 1]), n_trials=2, abstentions=0)
        assert vote.predicted_class == 0

    def test_two_trial_disagreement_predicts_first_winner(self):
        # the n=2 tie rule that keeps the accuracy-vs-trials curve flat
        # between 1 and 2 trials instead of dipping toward low labels
        assert tally_votes(np.array([7, 3]), 10).predicted_class == 7
        assert tally_votes(np.array([3, 7]), 10).predicted_class == 3

    def test_deterministic_given_seed(self):
        net, _ = tiny_net()
        x = np.array([0.3, 0.8, 0.2, 0.7])
        a = stochastic_winners(net, x, 32, 9)
        b = stochastic_winners(net, x, 32, 9)
        np.testing.assert_array_equal(a, b)

    def test_batched_and_scalar_paths_agree_in_distribution(self):
        net, _ = tiny_net()
        x = np.array([0.6, 0.2, 0.9, 0.1])
        n = 3000
        rng = substream(77)
        scalar = np.array(
            [
                -1 if r.winner is None else r.winner
                for r in (forward_stochastic(net, x, rng) for _ in range(n))
            ]
        )
        batched = stochastic_winners(net, x, n, substream(78))
        p_scalar = np.bincount(scalar[scalar >= 0], minlength=2) / max((scalar >= 0).sum(), 1)
        p_batched = np.bincount(batched[batched >= 0], minlength=2) / max((batched >= 0).sum(), 1)
        # two-proportion comparison at ~4 sigma
        p_pool = (p_scalar + p_batched) / 2
        se = np.sqrt(2 * p_pool * (1 - p_pool) / n) + 1e-9
        np.testing.assert_array_less(np.abs(p_scalar - p_batched), 4 * se + 0.01)

    def test_more_trials_do_not_hurt(self, desk_net, digit_data):
        _, test = digit_data
        x, y = test.flat()[:150], test.labels[:150]
        hits1 = hits32 = 0
        for i in range(len(x)):
            winners = stochastic_winners(desk_net, x[i], 32, substream(5, i))
            hits1 += tally_votes(winners[:1], 10).predicted_class == y[i]
            hits32 += tally_votes(winners, 10).predicted_class == y[i]
        assert hits32 >= hits1


class TestForwardReference:
    def test_probabilities_sum_to_one(self, desk_net, digit_data):
        _, test = digit_data
        p = forward_reference(desk_net, test.flat()[0])
        assert p.shape == (10,)
        assert p.sum() == pytest.approx(1.0, rel=1e-9)
        assert np.all(p >= 0)

    def test_zero_weights_give_uniform(self):
        spec = NetworkSpec(dims=(3, 2, 2))
        net = build_network([np.zeros((3, 2)), np.zeros((3, 2))], spec)
        np.testing.assert_allclose(forward_reference(net, np.ones(3)), 0.5)

    def test_matches_trainer_forward(self, desk_net, desk_weights, digit_data):
        from scipy.special import softmax

        from stochbar.train import reference_logits

        _, test = digit_data
        x = test.flat()[3]
        want = softmax(reference_logits(desk_weights, x[None, :])[0])
        np.testing.assert_allclose(forward_reference(desk_net, x), want, rtol=1e-9)

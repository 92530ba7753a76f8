"""sklearn wrapper: params, fitting contract, deterministic predictions."""

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from stochbar.estimator import StochasticCrossbarClassifier


@pytest.fixture(scope="module")
def small_problem(digit_data):
    train, test = digit_data
    # keep fit cheap: subset + narrow hidden stack
    return train.flat()[:2500], train.labels[:2500], test.flat()[:300], test.labels[:300]


@pytest.fixture(scope="module")
def fitted(small_problem):
    x, y, _, _ = small_problem
    clf = StochasticCrossbarClassifier(
        hidden_dims=(32,), epochs=12, n_trials=16, random_state=0
    )
    return clf.fit(x, y)


class TestSklearnContract:
    def test_get_set_params_round_trip(self):
        clf = StochasticCrossbarClassifier(n_trials=8, v_th0=0.1)
        params = clf.get_params()
        assert params["n_trials"] == 8
        assert params["v_th0"] == 0.1
        other = clone(clf)
        assert other.get_params() == params

    def test_unfitted_predict_raises(self, small_problem):
        x = small_problem[0]
        with pytest.raises(NotFittedError):
            StochasticCrossbarClassifier().predict(x[:2])

    def test_fit_returns_self_and_sets_attrs(self, fitted):
        assert fitted.n_features_in_ == 784
        np.testing.assert_array_equal(fitted.classes_, np.arange(10))
        assert len(fitted.weights_) == 2
        assert fitted.network_.n_classes == 10

    def test_feature_range_enforced(self, small_problem):
        x, y = small_problem[0].copy(), small_problem[1]
        x[0, 0] = 2.0
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            StochasticCrossbarClassifier(epochs=1).fit(x, y)

    def test_predict_feature_count_checked(self, fitted):
        with pytest.raises(ValueError, match="features"):
            fitted.predict(np.zeros((2, 10)))


class TestPredictions:
    def test_accuracy_beats_chance_comfortably(self, fitted, small_problem):
        _, _, xt, yt = small_problem
        assert fitted.score(xt, yt) >= 0.9

    def test_predict_deterministic(self, fitted, small_problem):
        _, _, xt, _ = small_problem
        a = fitted.predict(xt[:40])
        b = fitted.predict(xt[:40])
        np.testing.assert_array_equal(a, b)

    def test_proba_rows_normalized(self, fitted, small_problem):
        _, _, xt, _ = small_problem
        proba = fitted.predict_proba(xt[:20])
        assert proba.shape == (20, 10)
        np.testing.assert_allclose(proba.sum(axis=1), 1.0, rtol=1e-9)
        assert np.all(proba >= 0)

    def test_labels_come_from_classes(self, small_problem):
        x, y, xt, _ = small_problem
        # remap labels to strings to prove predictions use classes_
        names = np.array([f"digit-{d}" for d in range(10)])
        clf = StochasticCrossbarClassifier(hidden_dims=(16,), epochs=3, n_trials=8)
        clf.fit(x, names[y])
        pred = clf.predict(xt[:10])
        assert set(pred) <= set(names)

    def test_more_trials_help_or_match(self, small_problem):
        x, y, xt, yt = small_problem
        few = StochasticCrossbarClassifier(hidden_dims=(32,), epochs=12, n_trials=1)
        many = StochasticCrossbarClassifier(hidden_dims=(32,), epochs=12, n_trials=32)
        s_few = few.fit(x, y).score(xt, yt)
        s_many = many.fit(x, y).score(xt, yt)
        assert s_many >= s_few

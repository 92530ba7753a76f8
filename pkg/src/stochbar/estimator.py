"""scikit-learn estimator wrapper around the full train-map-infer pipeline.

``fit`` trains the float teacher, programs it onto crossbars and keeps the
stochastic network; ``predict`` majority-votes repeated noisy passes.
Useful for pipelines and grid searches over the analog operating point
(``v_th0``, noise scales, trial counts).
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .crossbar import WeightMapSpec
from .network import NetworkSpec, build_network, infer_majority, stochastic_winners
from .neurons import SigmoidNeuronConfig, WTAConfig
from .rng import substream
from .train import train_reference_network


class StochasticCrossbarClassifier(ClassifierMixin, BaseEstimator):
    """Majority-vote classifier on a simulated noisy crossbar network.

    Parameters mirror the config file: training hyperparameters for the
    float teacher, then the analog operating point. Features must lie in
    [0, 1] (they drive read voltages). Predictions are deterministic given
    ``random_state``: row ``i`` of a ``predict`` call uses the stream
    ``(random_state, i)``.
    """

    def __init__(
        self,
        hidden_dims: tuple[int, ...] = (64, 32),
        epochs: int = 10,
        learning_rate: float = 0.8,
        batch_size: int = 64,
        n_trials: int = 32,
        v_th0: float = 0.05,
        v_supply: float = 12.0,
        max_steps: int = 1000,
        threshold_jitter: float = 1.0,
        hidden_lambda: float = 1.702,
        output_lambda: float = 0.3,
        v_read_v: float = 0.05,
        g_min_s: float = 1.0e-6,
        g_max_s: float = 3.0e-6,
        temperature_k: float = 300.0,
        weight_clip: float | None = None,
        random_state: int = 0,
    ):
        self.hidden_dims = hidden_dims
        self.epochs = epochs
        self.learning_rate = learning_rate
        self.batch_size = batch_size
        self.n_trials = n_trials
        self.v_th0 = v_th0
        self.v_supply = v_supply
        self.max_steps = max_steps
        self.threshold_jitter = threshold_jitter
        self.hidden_lambda = hidden_lambda
        self.output_lambda = output_lambda
        self.v_read_v = v_read_v
        self.g_min_s = g_min_s
        self.g_max_s = g_max_s
        self.temperature_k = temperature_k
        self.weight_clip = weight_clip
        self.random_state = random_state

    def _check_features(self, x: np.ndarray) -> None:
        if x.min() < -1e-9 or x.max() > 1.0 + 1e-9:
            raise ValueError(
                f"features must lie in [0, 1] (they set read voltages); "
                f"found range [{x.min():.4g}, {x.max():.4g}]"
            )

    def fit(self, X, y):
        X, y = check_X_y(X, y, dtype=float)
        self._check_features(X)
        self.classes_, y_idx = np.unique(y, return_inverse=True)
        if len(self.classes_) < 2:
            raise ValueError("need at least 2 classes")
        self.n_features_in_ = X.shape[1]
        dims = [X.shape[1], *(int(d) for d in self.hidden_dims), len(self.classes_)]
        self.weights_ = train_reference_network(
            X,
            y_idx,
            dims,
            epochs=self.epochs,
            learning_rate=self.learning_rate,
            batch_size=self.batch_size,
            seed=self.random_state,
            weight_clip=self.weight_clip,
        )
        spec = NetworkSpec(
            dims=tuple(dims),
            map_spec=WeightMapSpec(
                v_read_v=self.v_read_v, g_min_s=self.g_min_s, g_max_s=self.g_max_s
            ),
            hidden=SigmoidNeuronConfig(lambda_target=self.hidden_lambda),
            wta=WTAConfig(
                v_th0=self.v_th0,
                v_supply=self.v_supply,
                max_steps=self.max_steps,
                threshold_jitter=self.threshold_jitter,
            ),
            output_lambda=self.output_lambda,
            temperature_k=self.temperature_k,
        )
        self.network_ = build_network(self.weights_, spec)
        return self

    def _validate_for_predict(self, X) -> np.ndarray:
        check_is_fitted(self, "network_")
        X = check_array(X, dtype=float)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} features; fitted with {self.n_features_in_}"
            )
        self._check_features(X)
        return X

    def predict(self, X):
        X = self._validate_for_predict(X)
        out = np.empty(len(X), dtype=self.classes_.dtype)
        for i, row in enumerate(X):
            vote = infer_majority(
                self.network_, row, self.n_trials, substream(self.random_state, i)
            )
            # an all-abstain vote has no winner; fall back to the first class
            cls = vote.predicted_class if vote.is_valid else 0
            out[i] = self.classes_[cls]
        return out

    def predict_proba(self, X):
        """Vote shares over decided trials (uniform when every trial
        abstained, which the operating defaults make vanishingly rare)."""
        X = self._validate_for_predict(X)
        k = len(self.classes_)
        out = np.zeros((len(X), k))
        for i, row in enumerate(X):
            winners = stochastic_winners(
                self.network_, row, self.n_trials, substream(self.random_state, i)
            )
            decided = winners[winners >= 0]
            if decided.size:
                out[i] = np.bincount(decided, minlength=k) / decided.size
            else:
                out[i] = 1.0 / k
        return out

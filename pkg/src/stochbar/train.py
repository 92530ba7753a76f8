"""Plain SGD trainer for the float reference network.

Logistic hidden units, soft-max cross-entropy output, minibatch SGD.
Deliberately dependency-free (no autograd framework): the float model is
only the teacher whose weights get programmed onto crossbars. Bias rows
exist on every layer except the first, matching the crossbar layout.
"""

from __future__ import annotations

import numpy as np

from .errors import NumericError
from .rng import substream


# mean CE this high (p_true < 4e-44) only happens when training has blown
# up; healthy runs start near ln(n_classes) and go down
_DIVERGENCE_LOSS = 100.0


def _sigmoid(z: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-np.clip(z, -500, 500)))


def _forward_cache(weights: list[np.ndarray], x: np.ndarray):
    inputs = []  # layer inputs, bias column already attached
    pre = []  # pre-activations
    a = x
    for l, w in enumerate(weights):
        a_in = np.hstack([a, np.ones((a.shape[0], 1))]) if l > 0 else a
        inputs.append(a_in)
        z = a_in @ w
        pre.append(z)
        a = _sigmoid(z) if l < len(weights) - 1 else z
    return inputs, pre


def reference_logits(weights: list[np.ndarray], x: np.ndarray) -> np.ndarray:
    """Float forward pass to output logits for a batch of feature rows."""
    _, pre = _forward_cache(weights, np.asarray(x, dtype=float))
    return pre[-1]


def train_reference_network(
    x: np.ndarray,
    y: np.ndarray,
    dims,
    epochs: int = 10,
    learning_rate: float = 0.8,
    batch_size: int = 64,
    seed: int = 0,
    weight_clip: float | None = None,
    return_history: bool = False,
):
    """Train the float teacher network; returns the weight list.

    ``dims`` runs input width to class count, e.g. ``[784, 64, 32, 10]``.
    ``weight_clip``, when set, clamps weights to ``[-clip, clip]`` after
    every step (off by default: build-time rescaling makes it optional).
    With ``return_history`` the per-epoch mean training loss comes back
    too. Raises :class:`NumericError` if the loss stops being finite.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y).astype(np.int64).ravel()
    dims = [int(d) for d in dims]
    if x.ndim != 2:
        raise ValueError(f"x must be 2-D (samples, features), got shape {x.shape}")
    if len(y) != len(x):
        raise ValueError(f"{len(x)} samples but {len(y)} labels")
    if x.shape[1] != dims[0]:
        raise ValueError(f"x has {x.shape[1]} features but dims[0] = {dims[0]}")
    if len(dims) < 2:
        raise ValueError(f"dims needs input and output widths, got {dims}")
    if y.min() < 0 or y.max() >= dims[-1]:
        raise ValueError(f"labels span [{y.min()}, {y.max()}], outside {dims[-1]} classes")
    if epochs < 1 or batch_size < 1:
        raise ValueError("epochs and batch_size must be >= 1")
    if learning_rate <= 0:
        raise ValueError(f"learning rate must be positive, got {learning_rate}")

    rng = substream(seed)
    weights: list[np.ndarray] = []
    for l in range(len(dims) - 1):
        rows = dims[l] + (1 if l > 0 else 0)
        weights.append(rng.normal(0.0, 1.0 / np.sqrt(rows), size=(rows, dims[l + 1])))

    n = len(x)
    onehot = np.eye(dims[-1])[y]
    history: list[float] = []
    for _ in range(epochs):
        order = rng.permutation(n)
        loss_sum = 0.0
        for start in range(0, n, batch_size):
            idx = order[start : start + batch_size]
            xb, yb = x[idx], onehot[idx]
            inputs, pre = _forward_cache(weights, xb)
            z_out = pre[-1] - pre[-1].max(axis=1, keepdims=True)
            p = np.exp(z_out)
            p /= p.sum(axis=1, keepdims=True)
            loss_sum += float(-np.sum(np.log(np.clip((p * yb).sum(axis=1), 1e-300, None))))
            delta = (p - yb) / len(xb)
            for l in range(len(weights) - 1, -1, -1):
                grad = inputs[l].T @ delta
                if l > 0:
                    back = (delta @ weights[l].T)[:, :-1]  # drop the bias column
                    h = _sigmoid(pre[l - 1])
                    delta = back * h * (1.0 - h)
                weights[l] -= learning_rate * grad
                if weight_clip is not None:
                    np.clip(weights[l], -weight_clip, weight_clip, out=weights[l])
        epoch_loss = loss_sum / n
        if not np.isfinite(epoch_loss) or epoch_loss > _DIVERGENCE_LOSS:
            raise NumericError(
                f"training diverged: mean loss {epoch_loss:.3g} after epoch "
                f"{len(history) + 1} (learning rate {learning_rate})"
            )
        history.append(epoch_loss)
    if return_history:
        return weights, history
    return weights

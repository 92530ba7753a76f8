"""Multi-layer stochastic network: binary hidden layers, WTA output layer.

Each layer is one crossbar. Trained float weights are rescaled per layer to
max-abs 1 before mapping (devices only span a fixed conductance window);
the comparator noise and the race thresholds are rescaled by the same
factor, so the behavior matches running on the raw logits exactly.

Layers after the first carry one extra bias row driven at full read
voltage; the input crossbar has none (pixel rows only).

Inference repeats the whole stochastic forward pass and majority-votes the
race winners. ``(net, input, seed)`` fully determines the result; trials
are vectorized on one derived stream per call, so worker scheduling can
never change it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .crossbar import Crossbar, WeightMapSpec, map_weights, noisy_mac
from .errors import ConfigError
from .neurons import (
    SigmoidNeuronConfig,
    TrialRecord,
    WTAConfig,
    calibrate_bandwidth,
    mac_source,
    sigmoid_fire,
    wta_decide,
)
from .noise import NoisePhysics, thermal_noise_rms
from .rng import as_generator


@dataclass(frozen=True)
class NetworkSpec:
    """Architecture plus the analog operating point.

    ``wta`` and ``output_lambda`` are stated in raw logit units; build time
    rescales them into each layer's normalized units. Seed policy: every
    stochastic entry point takes a seed or generator explicitly, and
    derived substreams are keyed on ``(seed, input_index)``.
    """

    dims: tuple[int, ...]
    map_spec: WeightMapSpec = field(default_factory=WeightMapSpec)
    hidden: SigmoidNeuronConfig = field(default_factory=SigmoidNeuronConfig)
    wta: WTAConfig = field(
        default_factory=lambda: WTAConfig(v_th0=0.05, v_supply=12.0, threshold_jitter=1.0)
    )
    output_lambda: float = 0.3
    temperature_k: float = 300.0

    def __post_init__(self) -> None:
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        if len(dims) < 2:
            raise ConfigError(f"need at least input and output dims, got {dims}")
        if any(d < 1 for d in dims):
            raise ConfigError(f"layer widths must be positive, got {dims}")
        if dims[-1] < 2:
            raise ConfigError(f"output layer needs >= 2 classes, got {dims[-1]}")
        if self.output_lambda < 0:
            raise ConfigError(f"output lambda must be >= 0, got {self.output_lambda}")


@dataclass(frozen=True)
class _Layer:
    crossbar: Crossbar
    physics: NoisePhysics
    scale: float  # max-abs of the raw weights
    weights_raw: np.ndarray
    has_bias: bool
    # noise SDs in this layer's normalized units, precomputed for batching
    sd_cols_n: np.ndarray
    sd_ref_n: float
    wta: WTAConfig | None = None  # set on the output layer only
    noise_lambda_n: float = 0.0


class Network:
    """Built network: one :class:`_Layer` per weight matrix."""

    def __init__(self, layers: list[_Layer], spec: NetworkSpec):
        self.layers = layers
        self.spec = spec

    @property
    def n_classes(self) -> int:
        return self.spec.dims[-1]


def _build_layer(
    w: np.ndarray, spec: NetworkSpec, is_output: bool, lam_raw: float, has_bias: bool
) -> _Layer:
    scale = float(np.max(np.abs(w)))
    if scale == 0.0:
        scale = 1.0
    wn = w / scale
    cb = map_weights(wn, spec.map_spec)
    lam_n = lam_raw / scale
    physics = calibrate_bandwidth(cb, lam_n, temperature_k=spec.temperature_k)
    unit = spec.map_spec.signal_unit_a
    sd_cols = thermal_noise_rms(cb.conductances_s.sum(axis=0), physics) / unit
    sd_ref = thermal_noise_rms(cb.n_rows * spec.map_spec.g_ref_s, physics) / unit
    wta = None
    if is_output:
        w0 = spec.wta
        wta = WTAConfig(
            v_th0=w0.v_th0 / scale,
            v_supply=w0.v_supply / scale,
            max_steps=w0.max_steps,
            threshold_jitter=w0.threshold_jitter / scale,
        )
    return _Layer(
        crossbar=cb,
        physics=physics,
        scale=scale,
        weights_raw=w,
        has_bias=has_bias,
        sd_cols_n=np.atleast_1d(sd_cols),
        sd_ref_n=float(sd_ref),
        wta=wta,
        noise_lambda_n=lam_n,
    )


def build_network(weights: list[np.ndarray], spec: NetworkSpec) -> Network:
    """Map trained weight matrices onto crossbars.

    Expected shapes for dims ``(d0, d1, ..., dk)``: layer 0 is
    ``(d0, d1)``; every later layer ``l`` is ``(d_{l-1} + 1, d_l)``, the
    extra row being the bias driven at constant full activation.
    """
    dims = spec.dims
    if len(weights) != len(dims) - 1:
        raise ConfigError(
            f"got {len(weights)} weight matrices for dims {dims} (need {len(dims) - 1})"
        )
    layers: list[_Layer] = []
    for l, w in enumerate(weights):
        w = np.asarray(w, dtype=float)
        n_in = dims[l] if l == 0 else dims[l] + 1
        want = (n_in, dims[l + 1])
        if w.shape != want:
            raise ConfigError(
                f"layer {l}: weight shape {w.shape} does not match {want} "
                f"(dims {dims}, bias rows on layers >= 1)"
            )
        is_output = l == len(weights) - 1
        lam_raw = spec.output_lambda if is_output else spec.hidden.lambda_target
        layers.append(_build_layer(w, spec, is_output, lam_raw, has_bias=l > 0))
    return Network(layers, spec)


def _check_input(net: Network, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float).ravel()
    if x.shape[0] != net.spec.dims[0]:
        raise ValueError(f"input length {x.shape[0]} != network input dim {net.spec.dims[0]}")
    if not np.all(np.isfinite(x)) or x.min() < -1e-9 or x.max() > 1.0 + 1e-9:
        raise ValueError("inputs must lie in [0, 1] (activations drive read voltages)")
    return x


def _with_bias(a: np.ndarray, layer: _Layer) -> np.ndarray:
    if not layer.has_bias:
        return a
    if a.ndim == 1:
        return np.concatenate([a, [1.0]])
    return np.hstack([a, np.ones((a.shape[0], 1))])


def forward_stochastic(
    net: Network,
    x: np.ndarray,
    rng: np.random.Generator,
    return_hidden: bool = False,
) -> TrialRecord | tuple[TrialRecord, list[np.ndarray]]:
    """One full stochastic pass: noisy MACs and comparators layer by layer,
    then a WTA race on the output crossbar.

    Returns the output :class:`TrialRecord`; with ``return_hidden`` also
    the list of hidden firing patterns (one bool array per hidden layer).
    """
    x = _check_input(net, x)
    a = x
    hidden: list[np.ndarray] = []
    for layer in net.layers[:-1]:
        mac = noisy_mac(layer.crossbar, _with_bias(a, layer), layer.physics, rng)
        fired = sigmoid_fire(mac)
        hidden.append(fired)
        a = fired.astype(float)
    out = net.layers[-1]
    src = mac_source(out.crossbar, _with_bias(a, out), out.physics)
    rec = wta_decide(src, out.wta, rng)
    if return_hidden:
        return rec, hidden
    return rec


@dataclass(frozen=True)
class CumulativeVote:
    """Majority-vote tally over repeated stochastic trials."""

    counts: np.ndarray  # per-class win counts
    n_trials: int
    abstentions: int
    # trial index of each class's first win (n_trials = never won). Count
    # ties go to the earliest winner: a plain lowest-index argmax skews
    # even trial counts toward low class labels, which shows up as a dip
    # in the accuracy-vs-trials curve between 1 and 2 trials.
    first_win: np.ndarray | None = None

    @property
    def is_valid(self) -> bool:
        return self.abstentions < self.n_trials

    @property
    def predicted_class(self) -> int | None:
        """Most-voted class (ties: earliest first win, then lowest index);
        ``None`` when every trial abstained, which flags the prediction
        invalid."""
        if not self.is_valid:
            return None
        tied = np.flatnonzero(self.counts == self.counts.max())
        if tied.size > 1 and self.first_win is not None:
            return int(tied[np.argmin(self.first_win[tied])])
        return int(tied[0])


def _race_batch(
    z: np.ndarray,
    sd_cols_n: np.ndarray,
    sd_ref_n: float,
    cfg: WTAConfig,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """Race all rows of ``z`` (trials x neurons, normalized units) at once.

    Returns (winners, steps); winner -1 marks an abstention. Same mechanism
    as :func:`neurons.wta_decide`, vectorized over trials.
    """
    n_trials, n = z.shape
    winners = np.full(n_trials, -1, dtype=np.int64)
    steps = np.full(n_trials, cfg.max_steps, dtype=np.int64)
    active = np.arange(n_trials)
    for step in range(1, cfg.max_steps + 1):
        if active.size == 0:
            break
        m = active.size
        v = (
            z[active]
            + rng.normal(0.0, 1.0, size=(m, n)) * sd_cols_n
            - rng.normal(0.0, 1.0, size=(m, 1)) * sd_ref_n
        )
        np.minimum(v, cfg.v_supply, out=v)
        theta = cfg.v_th0 + cfg.threshold_jitter * rng.logistic(0.0, 1.0, size=(m, n))
        margin = v - theta
        crossed = margin > 0.0
        resolved = crossed.any(axis=1)
        if resolved.any():
            rows = active[resolved]
            picks = np.argmax(np.where(crossed[resolved], margin[resolved], -np.inf), axis=1)
            winners[rows] = picks
            steps[rows] = step
            active = active[~resolved]
    return winners, steps


def stochastic_winners(
    net: Network,
    x: np.ndarray,
    n_trials: int,
    seed: int | np.random.Generator,
    return_steps: bool = False,
) -> np.ndarray | tuple[np.ndarray, np.ndarray]:
    """Race winners of ``n_trials`` independent stochastic passes
    (-1 marks an abstention); optionally also the race step counts.

    Hidden noise is drawn once per layer per trial; the output race redraws
    every step. All trials run vectorized on a single stream derived from
    ``seed``, so the result is reproducible regardless of scheduling.
    """
    if n_trials < 1:
        raise ValueError(f"n_trials must be >= 1, got {n_trials}")
    x = _check_input(net, x)
    rng = as_generator(seed)
    a = np.broadcast_to(x, (n_trials, x.shape[0])).copy()
    for layer in net.layers[:-1]:
        zn = _with_bias(a, layer) @ (layer.weights_raw / layer.scale)
        zn = zn + rng.normal(0.0, 1.0, size=zn.shape) * layer.sd_cols_n
        zn = zn - rng.normal(0.0, 1.0, size=(n_trials, 1)) * layer.sd_ref_n
        a = (zn > 0.0).astype(float)
    out = net.layers[-1]
    z_out = _with_bias(a, out) @ (out.weights_raw / out.scale)
    winners, steps = _race_batch(z_out, out.sd_cols_n, out.sd_ref_n, out.wta, rng)
    if return_steps:
        return winners, steps
    return winners


def tally_votes(winners: np.ndarray, n_classes: int) -> CumulativeVote:
    """Fold a winner sequence into a :class:`CumulativeVote`."""
    winners = np.asarray(winners)
    decided = np.flatnonzero(winners >= 0)
    counts = np.bincount(winners[decided], minlength=n_classes)
    first_win = np.full(n_classes, len(winners), dtype=np.int64)
    # reversed assignment: with duplicate class indices the last write wins,
    # which after reversal is each class's earliest trial
    first_win[winners[decided[::-1]]] = decided[::-1]
    return CumulativeVote(
        counts=counts,
        n_trials=len(winners),
        abstentions=len(winners) - decided.size,
        first_win=first_win,
    )


def infer_majority(
    net: Network,
    x: np.ndarray,
    n_trials: int,
    seed: int | np.random.Generator,
) -> CumulativeVote:
    """Repeat the stochastic forward pass ``n_trials`` times and vote.

    See :func:`stochastic_winners` for the determinism contract: the tally
    is a pure function of ``(net, x, n_trials, seed)``.
    """
    return tally_votes(stochastic_winners(net, x, n_trials, seed), net.n_classes)


def forward_reference(net: Network, x: np.ndarray) -> np.ndarray:
    """Noise-free float reference: logistic hidden units, soft-max output.

    This is the classifier the stochastic network approximates; its argmax
    is the baseline accuracy anchor.
    """
    x = _check_input(net, x)
    a = x
    for layer in net.layers[:-1]:
        z = _with_bias(a, layer) @ layer.weights_raw
        a = 1.0 / (1.0 + np.exp(-np.clip(z, -500, 500)))
    z = _with_bias(a, net.layers[-1]) @ net.layers[-1].weights_raw
    e = np.exp(z - z.max())
    return e / e.sum()

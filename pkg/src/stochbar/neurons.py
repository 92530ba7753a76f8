"""Stochastic neurons built from comparators over noisy MAC currents.

Binary (sigmoid) neuron: fire iff the column current beats the reference
current. Thermal noise makes this a Bernoulli draw with

    P(fire | z) = 0.5 * (1 + erf(v_r * g0 * z / (sigma * sqrt(2))))

where ``z`` is the noise-free logit and ``sigma`` the current-difference
RMS. Choosing the bandwidth so that ``sigma = lambda * v_r * g0`` with
``lambda = 1.702`` makes the curve track the logistic function to within
0.0095 everywhere (the classic probit/logit match).

Winner-take-all (soft-max) neuron group: on every step each output line
gets a fresh noisy MAC draw and races a stochastic threshold; the first
crossing wins and inhibits the rest. The threshold sits ``v_th0`` above the
static level and carries logistic-distributed jitter, whose exponential
tails are what shape the win frequencies into a soft-max over the logits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.special import erf

from .crossbar import Crossbar, MacResult, noisy_mac
from .noise import NoisePhysics

PROBIT_LOGIT_LAMBDA = 1.702


@dataclass(frozen=True)
class SigmoidNeuronConfig:
    """Target noise scale for binary neurons, in logit units."""

    lambda_target: float = PROBIT_LOGIT_LAMBDA

    def __post_init__(self) -> None:
        if self.lambda_target <= 0:
            raise ValueError(f"lambda must be positive, got {self.lambda_target}")


def sigmoid_fire(mac: MacResult) -> np.ndarray:
    """Comparator decisions, one per column: ``I_j > I_ref``.

    The randomness already lives in the MAC draw, so this is deterministic
    given ``mac``. Exact ties do not fire.
    """
    return mac.current_difference_a() > 0.0


def _column_noise_sd(cb: Crossbar, physics: NoisePhysics, column: int | None) -> float:
    totals = cb.column_totals_s()
    if column is None:
        total = float(totals.mean())  # typical column
    else:
        total = float(totals[column])
    return float(np.sqrt(physics.four_kt() * physics.bandwidth_hz * total))


def analytic_fire_probability(
    z, cb: Crossbar, physics: NoisePhysics, column: int | None = None
):
    """Closed-form firing probability at noise-free logit ``z``.

    ``column=None`` uses the typical (mean) column conductance; pass an
    index for an exact per-column curve. With noise disabled the curve
    degenerates to a unit step (0.5 exactly at z = 0).
    """
    z = np.asarray(z, dtype=float)
    sd = _column_noise_sd(cb, physics, column)
    if sd == 0.0:
        out = np.where(z > 0, 1.0, np.where(z < 0, 0.0, 0.5))
    else:
        arg = cb.map_spec.signal_unit_a * z / (sd * np.sqrt(2.0))
        out = 0.5 * (1.0 + erf(arg))
    return float(out) if out.ndim == 0 else out


def calibrate_bandwidth(
    cb: Crossbar,
    lambda_target: float = PROBIT_LOGIT_LAMBDA,
    temperature_k: float = 300.0,
    column: int | None = None,
) -> NoisePhysics:
    """Pick the bandwidth that sets the comparator noise to ``lambda``
    logit units, i.e. ``sigma = lambda * v_r * g0`` for the typical column.

    Returns the full :class:`NoisePhysics` at the given temperature.
    """
    if lambda_target < 0:
        raise ValueError(f"lambda must be non-negative, got {lambda_target}")
    if lambda_target == 0.0:
        return NoisePhysics(temperature_k=temperature_k, bandwidth_hz=0.0)
    totals = cb.column_totals_s()
    total = float(totals.mean()) if column is None else float(totals[column])
    sigma = lambda_target * cb.map_spec.signal_unit_a
    base = NoisePhysics(temperature_k=temperature_k, bandwidth_hz=0.0)
    bandwidth = sigma**2 / (base.four_kt() * total)
    return NoisePhysics(temperature_k=temperature_k, bandwidth_hz=bandwidth)


@dataclass(frozen=True)
class WTAConfig:
    """Race parameters for a winner-take-all group.

    Values are in normalized logit-voltage units (the scale ``normalized()``
    MAC outputs use). ``v_th0`` is the static threshold offset above the
    resting output level, ``threshold_jitter`` the scale of the logistic
    jitter on it, and ``v_supply`` the rail that output swings saturate at.
    """

    v_th0: float = 6.0
    v_supply: float = 12.0
    max_steps: int = 1000
    threshold_jitter: float = 1.0

    def __post_init__(self) -> None:
        if self.max_steps < 1:
            raise ValueError(f"max_steps must be >= 1, got {self.max_steps}")
        if self.threshold_jitter < 0:
            raise ValueError(f"threshold jitter must be >= 0, got {self.threshold_jitter}")
        if not self.v_supply > self.v_th0:
            raise ValueError(
                f"supply rail ({self.v_supply}) must sit above the static threshold ({self.v_th0})"
            )


@dataclass
class TrialRecord:
    """Outcome of one race: winner (or ``None`` for an abstention after
    ``max_steps``), the number of steps taken, and which lines had crossed
    threshold on the deciding step."""

    winner: int | None
    n_steps: int
    fired: np.ndarray

    @property
    def abstained(self) -> bool:
        return self.winner is None


MacSource = Callable[[np.random.Generator], MacResult]


def mac_source(cb: Crossbar, x: np.ndarray, physics: NoisePhysics) -> MacSource:
    """Bind a crossbar, activations and physics into a fresh-draw callable
    for :func:`wta_decide`."""
    xv = np.asarray(x, dtype=float)

    def draw(rng: np.random.Generator) -> MacResult:
        return noisy_mac(cb, xv, physics, rng)

    return draw


def wta_decide(
    source: MacSource,
    cfg: WTAConfig,
    rng: np.random.Generator,
    trace: list | None = None,
) -> TrialRecord:
    """Run one winner-take-all race to a decision or an abstention.

    Each step draws a fresh MAC, saturates the normalized outputs at the
    supply rail, jitters the threshold per neuron, and checks for
    crossings. The largest margin among same-step crossers wins; threshold
    state fully resets between calls. If ``trace`` is a list, it receives
    ``(step, values, thresholds)`` tuples for every step.
    """
    for step in range(1, cfg.max_steps + 1):
        mac = source(rng)
        values = np.minimum(mac.normalized(), cfg.v_supply)
        theta = cfg.v_th0 + cfg.threshold_jitter * rng.logistic(0.0, 1.0, size=values.shape)
        if trace is not None:
            trace.append((step, values.copy(), theta.copy()))
        margin = values - theta
        crossed = margin > 0.0
        if crossed.any():
            winner = int(np.argmax(np.where(crossed, margin, -np.inf)))
            return TrialRecord(winner=winner, n_steps=step, fired=crossed)
    n = values.shape[0]
    return TrialRecord(winner=None, n_steps=cfg.max_steps, fired=np.zeros(n, dtype=bool))


def wta_empirical_distribution(
    records: Iterable[TrialRecord], n_neurons: int
) -> tuple[np.ndarray, int]:
    """Win frequencies over decided trials, plus the abstention count.

    Frequencies are normalized over decisions only, so they sum to 1
    whenever at least one race resolved; all-abstain input raises.
    """
    counts = np.zeros(n_neurons, dtype=np.int64)
    abstained = 0
    total = 0
    for rec in records:
        total += 1
        if rec.winner is None:
            abstained += 1
        else:
            counts[rec.winner] += 1
    if total == 0:
        raise ValueError("no trial records given")
    decided = total - abstained
    if decided == 0:
        raise ValueError(f"all {total} races abstained; no distribution to report")
    return counts / decided, abstained


def reference_softmax(z: Sequence[float]) -> np.ndarray:
    """Numerically stable soft-max of a logit vector (the target law the
    race frequencies are compared against)."""
    z = np.asarray(z, dtype=float)
    e = np.exp(z - z.max())
    return e / e.sum()

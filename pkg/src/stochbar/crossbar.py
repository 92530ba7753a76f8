"""Weight-to-conductance mapping and the noisy analog MAC.

A signed weight matrix ``W`` (rows = inputs, columns = neurons) maps onto a
crossbar of non-negative conductances through an affine map

    G_ij = W_ij * G0 + G_ref

with ``G0`` and ``G_ref`` chosen so the weight range lands on the device
range exactly. One extra physical column biased at ``G_ref`` everywhere
carries the reference current that a comparator subtracts, so the signed
product is recovered as a current difference:

    I_j - I_ref = V_r * G0 * sum_i x_i W_ij
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .noise import NoisePhysics, thermal_noise_rms


@dataclass(frozen=True)
class WeightMapSpec:
    """Affine weight-to-conductance map plus the read voltage.

    ``g0_s`` is the conductance per unit weight, ``g_ref_s`` the conductance
    representing weight zero (also the reference-column value).
    """

    w_min: float = -1.0
    w_max: float = 1.0
    g_min_s: float = 1.0e-6
    g_max_s: float = 3.0e-6
    v_read_v: float = 0.05

    def __post_init__(self) -> None:
        if not self.w_max > self.w_min:
            raise ValueError(f"need w_max > w_min, got [{self.w_min}, {self.w_max}]")
        if not (self.g_max_s > self.g_min_s >= 0):
            raise ValueError(f"need g_max > g_min >= 0, got [{self.g_min_s}, {self.g_max_s}]")
        if self.v_read_v <= 0:
            raise ValueError(f"read voltage must be positive, got {self.v_read_v}")
        # the zero-weight conductance must itself be representable
        if not (self.w_min <= 0.0 <= self.w_max):
            raise ValueError("weight range must contain zero for a reference column to exist")

    @property
    def g0_s(self) -> float:
        return (self.g_max_s - self.g_min_s) / (self.w_max - self.w_min)

    @property
    def g_ref_s(self) -> float:
        return (self.w_max * self.g_min_s - self.w_min * self.g_max_s) / (self.w_max - self.w_min)

    @property
    def signal_unit_a(self) -> float:
        """Current difference produced by a unit weight at full read voltage."""
        return self.v_read_v * self.g0_s


def build_map_spec(
    w_min: float = -1.0,
    w_max: float = 1.0,
    g_min_s: float = 1.0e-6,
    g_max_s: float = 3.0e-6,
    v_read_v: float = 0.05,
) -> WeightMapSpec:
    """Validated constructor for :class:`WeightMapSpec`."""
    return WeightMapSpec(w_min, w_max, g_min_s, g_max_s, v_read_v)


@dataclass(frozen=True)
class Crossbar:
    """One programmed crossbar: device conductances plus its map spec."""

    conductances_s: np.ndarray  # (n_rows, n_cols)
    map_spec: WeightMapSpec

    def __post_init__(self) -> None:
        g = np.asarray(self.conductances_s, dtype=float)
        if g.ndim != 2 or g.size == 0:
            raise ValueError(f"conductances must be a non-empty 2-D array, got shape {g.shape}")
        object.__setattr__(self, "conductances_s", g)

    @property
    def n_rows(self) -> int:
        return self.conductances_s.shape[0]

    @property
    def n_cols(self) -> int:
        return self.conductances_s.shape[1]

    def column_totals_s(self) -> np.ndarray:
        """Per-column noise-relevant conductance: data devices plus the
        matching reference devices, ``sum_i (G_ij + g_ref)``."""
        return self.conductances_s.sum(axis=0) + self.n_rows * self.map_spec.g_ref_s

    def to_weights(self) -> np.ndarray:
        """Invert the affine map back to signed weights."""
        s = self.map_spec
        return (self.conductances_s - s.g_ref_s) / s.g0_s


def map_weights(weights: np.ndarray, spec: WeightMapSpec) -> Crossbar:
    """Program a weight matrix onto a crossbar.

    Weights must lie inside ``[w_min, w_max]`` (train-time clipping or
    rescaling is the caller's job); values outside raise ``ValueError``.
    """
    w = np.asarray(weights, dtype=float)
    if w.ndim != 2:
        raise ValueError(f"weights must be 2-D (rows=inputs, cols=neurons), got shape {w.shape}")
    if not np.all(np.isfinite(w)):
        raise ValueError("weights must be finite")
    if w.min() < spec.w_min - 1e-12 or w.max() > spec.w_max + 1e-12:
        raise ValueError(
            f"weights outside map range [{spec.w_min}, {spec.w_max}]: "
            f"found [{w.min()}, {w.max()}]"
        )
    g = np.clip(w, spec.w_min, spec.w_max) * spec.g0_s + spec.g_ref_s
    return Crossbar(g, spec)


def encode_inputs(x: np.ndarray, spec: WeightMapSpec) -> np.ndarray:
    """Convert activations in [0, 1] to read voltages ``x * v_read``."""
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise ValueError(f"inputs must be 1-D, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("inputs must be finite")
    if v.min() < -1e-9 or v.max() > 1.0 + 1e-9:
        raise ValueError(f"inputs must lie in [0, 1], found [{v.min()}, {v.max()}]")
    return np.clip(v, 0.0, 1.0) * spec.v_read_v


@dataclass(frozen=True)
class MacResult:
    """Currents from one noisy MAC evaluation.

    ``normalized()`` converts the signed current differences into logit
    units (units of ``v_read * g0``), which is the scale neurons work in.
    """

    column_currents_a: np.ndarray  # (n_cols,)
    reference_current_a: float
    expected_difference_a: np.ndarray  # noiseless I_j - I_ref
    signal_unit_a: float

    def current_difference_a(self) -> np.ndarray:
        return self.column_currents_a - self.reference_current_a

    def normalized(self) -> np.ndarray:
        return self.current_difference_a() / self.signal_unit_a


def expected_current_difference(cb: Crossbar, x: np.ndarray) -> np.ndarray:
    """Noise-free ``I_j - I_ref`` for activations ``x``: equals
    ``v_read * g0 * (W^T x)`` by construction of the map."""
    v = encode_inputs(x, cb.map_spec)
    if v.shape[0] != cb.n_rows:
        raise ValueError(f"got {v.shape[0]} inputs for a {cb.n_rows}-row crossbar")
    i_cols = v @ cb.conductances_s
    i_ref = v.sum() * cb.map_spec.g_ref_s
    return i_cols - i_ref


def noisy_mac(
    cb: Crossbar, x: np.ndarray, physics: NoisePhysics, rng: np.random.Generator
) -> MacResult:
    """One analog multiply-accumulate with thermal noise.

    Each data column receives an aggregated Gaussian draw at the summed
    column conductance; the shared reference column receives one draw at
    ``n_rows * g_ref``. Summing independent per-device draws would give the
    identical distribution at far higher cost.
    """
    v = encode_inputs(x, cb.map_spec)
    if v.shape[0] != cb.n_rows:
        raise ValueError(f"got {v.shape[0]} inputs for a {cb.n_rows}-row crossbar")
    spec = cb.map_spec
    i_cols = v @ cb.conductances_s
    i_ref = v.sum() * spec.g_ref_s
    expected = i_cols - i_ref

    col_rms = thermal_noise_rms(cb.conductances_s.sum(axis=0), physics)
    ref_rms = thermal_noise_rms(cb.n_rows * spec.g_ref_s, physics)
    i_cols = i_cols + rng.normal(0.0, 1.0, size=cb.n_cols) * col_rms
    i_ref = i_ref + rng.normal(0.0, 1.0) * ref_rms

    return MacResult(
        column_currents_a=i_cols,
        reference_current_a=float(i_ref),
        expected_difference_a=expected,
        signal_unit_a=spec.signal_unit_a,
    )

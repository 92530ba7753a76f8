"""Thermal (Johnson-Nyquist) current noise for resistive crossbar devices.

A device of conductance ``G`` at temperature ``T`` observed over bandwidth
``df`` carries a zero-mean Gaussian noise current with RMS amplitude

    i_rms = sqrt(4 * k * T * G * df)

Independent devices add in variance, so a whole column can be sampled with a
single draw at the summed conductance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

BOLTZMANN_J_PER_K = 1.380649e-23  # exact SI value


@dataclass(frozen=True)
class NoisePhysics:
    """Operating point of the noise model.

    Parameters
    ----------
    temperature_k : float
        Absolute temperature in kelvin. Defaults to room temperature.
    bandwidth_hz : float
        Effective noise bandwidth. ``0`` disables noise entirely, which is
        useful for exact-arithmetic tests.
    boltzmann_j_per_k : float
        Boltzmann constant; exposed so tests can freeze it.
    """

    temperature_k: float = 300.0
    bandwidth_hz: float = 1.0e9
    boltzmann_j_per_k: float = BOLTZMANN_J_PER_K

    def __post_init__(self) -> None:
        if self.temperature_k <= 0:
            raise ValueError(f"temperature must be positive, got {self.temperature_k}")
        if self.bandwidth_hz < 0:
            raise ValueError(f"bandwidth must be non-negative, got {self.bandwidth_hz}")
        if self.boltzmann_j_per_k <= 0:
            raise ValueError("Boltzmann constant must be positive")

    def four_kt(self) -> float:
        return 4.0 * self.boltzmann_j_per_k * self.temperature_k


@dataclass(frozen=True)
class SnrReport:
    """Signal and noise power with their ratio in decibels."""

    signal_power_w: float
    noise_power_w: float
    snr_db: float

    @classmethod
    def from_powers(cls, signal_power_w: float, noise_power_w: float) -> "SnrReport":
        return cls(signal_power_w, noise_power_w, snr_db(signal_power_w, noise_power_w))


def thermal_noise_rms(conductance_s, physics: NoisePhysics):
    """RMS noise current in amperes for the given conductance(s).

    ``conductance_s`` may be a scalar or an array; the result has the same
    shape. Zero conductance or zero bandwidth gives exactly zero.
    """
    g = np.asarray(conductance_s, dtype=float)
    if np.any(g < 0):
        raise ValueError("conductance must be non-negative")
    out = np.sqrt(physics.four_kt() * g * physics.bandwidth_hz)
    return float(out) if np.isscalar(conductance_s) else out


def noise_power_from_current(i_rms_a: float, resistance_ohm: float) -> float:
    """Power ``i_rms**2 * R`` dissipated by a noise current in a resistance."""
    if resistance_ohm <= 0:
        raise ValueError(f"resistance must be positive, got {resistance_ohm}")
    return float(i_rms_a) ** 2 * resistance_ohm


def snr_db(signal_power_w: float, noise_power_w: float) -> float:
    """Signal-to-noise ratio ``10*log10(Ps/Pn)`` in decibels.

    Zero noise power yields ``inf`` (noise-free limit); powers must not be
    negative and the signal power must be positive.
    """
    if signal_power_w <= 0:
        raise ValueError(f"signal power must be positive, got {signal_power_w}")
    if noise_power_w < 0:
        raise ValueError(f"noise power must be non-negative, got {noise_power_w}")
    if noise_power_w == 0:
        return float("inf")
    return 10.0 * np.log10(signal_power_w / noise_power_w)


def sample_noise_current(conductance_s, physics: NoisePhysics, rng: np.random.Generator):
    """Draw instantaneous noise current(s), one per conductance entry.

    Shape follows ``conductance_s``. The draw consumes exactly one normal
    variate per entry, so streams stay reproducible.
    """
    rms = thermal_noise_rms(conductance_s, physics)
    out = rng.normal(0.0, 1.0, size=np.shape(conductance_s)) * rms
    return float(out) if np.isscalar(conductance_s) else out

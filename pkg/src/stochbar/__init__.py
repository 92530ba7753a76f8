"""Behavioral simulator of an ADC-free analog crossbar accelerator.

Thermal noise on crossbar columns turns comparators into stochastic
sigmoid neurons; a race between noisy output lines and jittered thresholds
turns the output layer into a soft-max sampler; repeating the whole pass
and majority-voting the winners recovers deterministic-network accuracy
without a single analog-to-digital converter.
"""

from .config import DEFAULTS, ExperimentConfig, load_config
from .crossbar import (
    Crossbar,
    MacResult,
    WeightMapSpec,
    build_map_spec,
    encode_inputs,
    expected_current_difference,
    map_weights,
    noisy_mac,
)
from .data import (
    Dataset,
    WeightArchive,
    load_dataset,
    load_idx,
    load_weights,
    save_idx,
    save_weights,
)
from .errors import ConfigError, DataError, NumericError, StochbarError
from .estimator import StochasticCrossbarClassifier
from .experiments import (
    CostReport,
    expected_counts_per_trial,
    run_accuracy_vs_trials,
    run_cost_report,
    run_sigmoid_sweep,
    run_train,
    run_wta_raster,
)
from .network import (
    CumulativeVote,
    Network,
    NetworkSpec,
    build_network,
    forward_reference,
    forward_stochastic,
    infer_majority,
    stochastic_winners,
)
from .neurons import (
    PROBIT_LOGIT_LAMBDA,
    SigmoidNeuronConfig,
    TrialRecord,
    WTAConfig,
    analytic_fire_probability,
    calibrate_bandwidth,
    mac_source,
    reference_softmax,
    sigmoid_fire,
    wta_decide,
    wta_empirical_distribution,
)
from .noise import (
    BOLTZMANN_J_PER_K,
    NoisePhysics,
    SnrReport,
    noise_power_from_current,
    sample_noise_current,
    snr_db,
    thermal_noise_rms,
)
from .rng import substream
from .synth import generate_digits, load_or_generate, write_digit_files
from .train import train_reference_network

__version__ = "0.1.0"

__all__ = [
    "BOLTZMANN_J_PER_K",
    "PROBIT_LOGIT_LAMBDA",
    "ConfigError",
    "CostReport",
    "Crossbar",
    "CumulativeVote",
    "DEFAULTS",
    "DataError",
    "Dataset",
    "ExperimentConfig",
    "MacResult",
    "Network",
    "NetworkSpec",
    "NoisePhysics",
    "NumericError",
    "SigmoidNeuronConfig",
    "SnrReport",
    "StochasticCrossbarClassifier",
    "StochbarError",
    "TrialRecord",
    "WTAConfig",
    "WeightArchive",
    "WeightMapSpec",
    "analytic_fire_probability",
    "build_map_spec",
    "build_network",
    "calibrate_bandwidth",
    "encode_inputs",
    "expected_counts_per_trial",
    "expected_current_difference",
    "forward_reference",
    "forward_stochastic",
    "generate_digits",
    "infer_majority",
    "load_config",
    "load_dataset",
    "load_idx",
    "load_or_generate",
    "load_weights",
    "mac_source",
    "map_weights",
    "noise_power_from_current",
    "noisy_mac",
    "reference_softmax",
    "run_accuracy_vs_trials",
    "run_cost_report",
    "run_sigmoid_sweep",
    "run_train",
    "run_wta_raster",
    "sample_noise_current",
    "save_idx",
    "save_weights",
    "sigmoid_fire",
    "snr_db",
    "stochastic_winners",
    "substream",
    "thermal_noise_rms",
    "train_reference_network",
    "wta_decide",
    "wta_empirical_distribution",
    "write_digit_files",
]

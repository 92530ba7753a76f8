"""Experiment runners: sweep, raster, accuracy curve, cost report.

Each runner consumes a resolved :class:`~stochbar.config.ExperimentConfig`,
writes CSV artifacts (schema-versioned header comment, then a header row)
plus the resolved config into the output directory, and returns a small
summary object. Reproducibility contract: identical config and seed give
byte-identical CSVs, for any ``threads`` value — work is split per input
with substreams keyed on the input index and gathered back in index order.
"""

from __future__ import annotations

import csv
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from .config import ExperimentConfig
from .crossbar import Crossbar, WeightMapSpec, map_weights
from .data import Dataset, load_dataset, load_weights, save_weights
from .errors import ConfigError, DataError
from .network import Network, NetworkSpec, build_network, stochastic_winners, tally_votes
from .neurons import (
    SigmoidNeuronConfig,
    WTAConfig,
    analytic_fire_probability,
    calibrate_bandwidth,
    mac_source,
    reference_softmax,
    sigmoid_fire,
    wta_decide,
)
from .noise import NoisePhysics
from .rng import substream
from .synth import write_digit_files
from .train import reference_logits, train_reference_network

SCHEMA_VERSION = 1


# ---------------------------------------------------------------- plumbing


def _parallel_map(fn: Callable, items: Sequence, threads: int) -> list:
    """Order-preserving map; ``threads == 0`` means one worker per CPU."""
    if threads == 0:
        threads = os.cpu_count() or 1
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _write_csv(path: Path, name: str, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(f"# stochbar {name} schema v{SCHEMA_VERSION}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return path


def _fmt(x: float) -> str:
    # repr keeps full precision and is stable across runs on one platform
    return repr(float(x))


def _dataset_paths(cfg: ExperimentConfig) -> dict[str, Path]:
    data = cfg.section("data")
    base = Path(data["dir"])
    names = {
        "train_images": "train-images-idx3-ubyte",
        "train_labels": "train-labels-idx1-ubyte",
        "test_images": "test-images-idx3-ubyte",
        "test_labels": "test-labels-idx1-ubyte",
    }
    return {
        key: Path(data[key]) if data[key] else base / fname
        for key, fname in names.items()
    }


def ensure_dataset(cfg: ExperimentConfig) -> tuple[Dataset, Dataset]:
    """Load the configured train/test pair, generating the synthetic digit
    files first when they are absent and synthesis is enabled."""
    paths = _dataset_paths(cfg)
    missing = [p for p in paths.values() if not p.exists()]
    if missing:
        synth = cfg.section("data")["synthetic"]
        if not synth["enabled"]:
            raise DataError(
                f"dataset files missing ({missing[0]} ...) and data.synthetic.enabled "
                "is false; provide IDX files or enable synthesis"
            )
        explicit = [k for k in paths if cfg.section("data")[k]]
        if explicit:
            raise DataError(
                f"data.{explicit[0]} points at a missing file; refusing to synthesize "
                "over explicit paths"
            )
        write_digit_files(
            Path(cfg.section("data")["dir"]),
            int(synth["n_train"]),
            int(synth["n_test"]),
            cfg.seed,
        )
    train = load_dataset(paths["train_images"], paths["train_labels"])
    test = load_dataset(paths["test_images"], paths["test_labels"])
    return train, test


def network_spec_from_config(
    cfg: ExperimentConfig,
    v_th0: float | None = None,
    hidden_lambda: float | None = None,
) -> NetworkSpec:
    net = cfg.section("network")
    wta = WTAConfig(
        v_th0=float(net["v_th0"] if v_th0 is None else v_th0),
        v_supply=float(net["v_supply"]),
        max_steps=int(net["max_steps"]),
        threshold_jitter=float(net["threshold_jitter"]),
    )
    lam = float(net["hidden_lambda"] if hidden_lambda is None else hidden_lambda)
    return NetworkSpec(
        dims=tuple(int(d) for d in net["dims"]),
        map_spec=WeightMapSpec(
            w_min=float(net["w_min"]),
            w_max=float(net["w_max"]),
            g_min_s=float(net["g_min_s"]),
            g_max_s=float(net["g_max_s"]),
            v_read_v=float(net["v_read_v"]),
        ),
        hidden=SigmoidNeuronConfig(lambda_target=lam) if lam > 0 else SigmoidNeuronConfig(),
        wta=wta,
        output_lambda=float(net["output_lambda"]),
        temperature_k=float(net["temperature_k"]),
    )


def _load_archive_network(cfg: ExperimentConfig, **spec_kw) -> Network:
    archive_path = Path(cfg.section("train")["archive"])
    if not archive_path.exists():
        raise DataError(
            f"weight archive {archive_path} not found; run the `train` subcommand first"
        )
    archive = load_weights(archive_path)
    spec = network_spec_from_config(cfg, **spec_kw)
    if tuple(archive.dims) != spec.dims:
        raise DataError(
            f"archive dims {archive.dims} do not match configured network.dims {spec.dims}"
        )
    return build_network(archive.weights, spec)


# ------------------------------------------------------------------ train


@dataclass(frozen=True)
class TrainSummary:
    archive_path: Path
    float_train_accuracy: float
    float_test_accuracy: float
    final_loss: float
    epochs: int


def run_train(cfg: ExperimentConfig) -> TrainSummary:
    """Train the float reference network and archive its weights.

    Writes ``train_history.csv`` (per-epoch loss) and the weight archive
    named by ``train.archive``.
    """
    out_dir = cfg.out_dir
    cfg.write_resolved(out_dir)
    train, test = ensure_dataset(cfg)
    tr = cfg.section("train")
    dims = [int(d) for d in cfg.section("network")["dims"]]
    weights, history = train_reference_network(
        train.flat(),
        train.labels,
        dims,
        epochs=int(tr["epochs"]),
        learning_rate=float(tr["learning_rate"]),
        batch_size=int(tr["batch_size"]),
        seed=cfg.seed,
        weight_clip=None if tr["weight_clip"] is None else float(tr["weight_clip"]),
        return_history=True,
    )
    archive_path = Path(tr["archive"])
    save_weights(archive_path, weights, dims)
    acc_tr = float(
        (reference_logits(weights, train.flat()).argmax(axis=1) == train.labels).mean()
    )
    acc_te = float(
        (reference_logits(weights, test.flat()).argmax(axis=1) == test.labels).mean()
    )
    _write_csv(
        out_dir / "train_history.csv",
        "train-history",
        ["epoch", "mean_loss"],
        [[e + 1, _fmt(loss)] for e, loss in enumerate(history)],
    )
    _write_csv(
        out_dir / "train_summary.csv",
        "train-summary",
        ["metric", "value"],
        [
            ["float_train_accuracy", _fmt(acc_tr)],
            ["float_test_accuracy", _fmt(acc_te)],
            ["final_loss", _fmt(history[-1])],
            ["archive", str(archive_path)],
        ],
    )
    return TrainSummary(
        archive_path=archive_path,
        float_train_accuracy=acc_tr,
        float_test_accuracy=acc_te,
        final_loss=history[-1],
        epochs=len(history),
    )


# ----------------------------------------------------------- sigmoid sweep


@dataclass(frozen=True)
class SweepPoint:
    knob_value: float
    z: np.ndarray
    empirical: np.ndarray
    analytic: np.ndarray
    slope_at_zero: float


@dataclass(frozen=True)
class SweepSummary:
    axis: str
    points: list[SweepPoint]
    csv_path: Path


def _sweep_crossbar(
    z_grid: np.ndarray, n_col: int, map_spec: WeightMapSpec
) -> Crossbar:
    # one column per logit, n_col identical devices each; unit inputs give
    # column logit z exactly
    w_max = float(np.max(np.abs(z_grid))) / n_col
    if w_max > min(abs(map_spec.w_min), abs(map_spec.w_max)):
        raise ConfigError(
            f"sweep needs n_col >= max|logit| ({np.max(np.abs(z_grid))}) to stay "
            f"inside the weight range; got n_col={n_col}"
        )
    w = np.tile(z_grid / n_col, (n_col, 1))
    return map_weights(w, map_spec)


def run_sigmoid_sweep(cfg: ExperimentConfig) -> SweepSummary:
    """Empirical vs analytic firing curves while one SNR knob varies.

    Emits ``sigmoid_sweep.csv`` rows
    ``(axis, knob_value, z, empirical, analytic, trials)``. The base
    operating point is calibrated to ``sweep.base_lambda``; knob values
    then steepen or flatten the curve around it.
    """
    out_dir = cfg.out_dir
    cfg.write_resolved(out_dir)
    sweep = cfg.section("sweep")
    net = cfg.section("network")
    axis = sweep["axis"]
    values = list(sweep["values"])
    n_col = int(sweep["n_col"])
    trials = int(sweep["trials"])
    z_grid = np.linspace(
        float(sweep["logit_lo"]), float(sweep["logit_hi"]), int(sweep["logit_count"])
    )

    base_map = WeightMapSpec(
        w_min=float(net["w_min"]),
        w_max=float(net["w_max"]),
        g_min_s=float(net["g_min_s"]),
        g_max_s=float(net["g_max_s"]),
        v_read_v=float(net["v_read_v"]),
    )
    base_cb = _sweep_crossbar(z_grid, n_col, base_map)
    base_physics = calibrate_bandwidth(
        base_cb, float(sweep["base_lambda"]), temperature_k=float(net["temperature_k"])
    )

    def build_point(value: float):
        map_spec, cols, physics = base_map, n_col, base_physics
        if axis == "v_read":
            map_spec = WeightMapSpec(
                base_map.w_min, base_map.w_max, base_map.g_min_s, base_map.g_max_s,
                v_read_v=float(value),
            )
        elif axis == "g0_scale":
            width = (base_map.g_max_s - base_map.g_min_s) * float(value)
            map_spec = WeightMapSpec(
                base_map.w_min, base_map.w_max, base_map.g_min_s,
                base_map.g_min_s + width, v_read_v=base_map.v_read_v,
            )
        elif axis == "bandwidth":
            physics = NoisePhysics(
                temperature_k=base_physics.temperature_k,
                bandwidth_hz=base_physics.bandwidth_hz * float(value),
            )
        elif axis == "n_col":
            cols = int(value)
        cb = _sweep_crossbar(z_grid, cols, map_spec)
        return cb, physics, cols

    def run_point(item: tuple[int, float]) -> SweepPoint:
        idx, value = item
        cb, physics, cols = build_point(value)
        rng = substream(cfg.seed, idx)
        x = np.ones(cols)
        src = mac_source(cb, x, physics)
        fired = np.zeros(len(z_grid), dtype=np.int64)
        for _ in range(trials):
            fired += sigmoid_fire(src(rng))
        empirical = fired / trials
        analytic = np.array(
            [analytic_fire_probability(z, cb, physics, column=j) for j, z in enumerate(z_grid)]
        )
        # slope of the analytic curve at z = 0 via central difference
        h = 1e-4
        slope = (
            analytic_fire_probability(h, cb, physics)
            - analytic_fire_probability(-h, cb, physics)
        ) / (2 * h)
        return SweepPoint(float(value), z_grid, empirical, analytic, float(slope))

    points = _parallel_map(run_point, list(enumerate(values)), cfg.threads)
    rows = []
    for pt in points:
        for z, emp, ana in zip(pt.z, pt.empirical, pt.analytic):
            rows.append([axis, _fmt(pt.knob_value), _fmt(z), _fmt(emp), _fmt(ana), trials])
    path = _write_csv(
        out_dir / "sigmoid_sweep.csv",
        "sigmoid-sweep",
        ["axis", "knob_value", "z", "empirical", "analytic", "trials"],
        rows,
    )
    return SweepSummary(axis=axis, points=points, csv_path=path)


# -------------------------------------------------------------- WTA raster


@dataclass(frozen=True)
class RasterSummary:
    logits: np.ndarray
    empirical: np.ndarray
    reference: np.ndarray
    winners: np.ndarray  # per decision, -1 = abstention
    csv_path: Path
    distribution_path: Path


def run_wta_raster(cfg: ExperimentConfig) -> RasterSummary:
    """Per-step race traces plus the winner distribution vs soft-max.

    ``wta_raster.csv`` rows are ``(decision, step, neuron, value,
    threshold, winner)`` where ``winner`` is the decision's final outcome
    (-1 for an abstention); ``wta_distribution.csv`` puts the empirical
    win frequencies next to the reference soft-max.
    """
    out_dir = cfg.out_dir
    cfg.write_resolved(out_dir)
    wta = cfg.section("wta")
    net = cfg.section("network")
    n = int(wta["n_neurons"])
    decisions = int(wta["decisions"])
    if wta["logits"] is not None:
        z = np.asarray([float(v) for v in wta["logits"]])
    else:
        z = substream(cfg.seed, 0).uniform(-float(wta["logit_range"]), float(wta["logit_range"]), n)

    map_spec = WeightMapSpec(
        w_min=float(net["w_min"]), w_max=float(net["w_max"]),
        g_min_s=float(net["g_min_s"]), g_max_s=float(net["g_max_s"]),
        v_read_v=float(net["v_read_v"]),
    )
    n_rows = max(4, int(np.ceil(np.max(np.abs(z)))) + 1)
    cb = map_weights(np.tile(z / n_rows, (n_rows, 1)), map_spec)
    physics = calibrate_bandwidth(
        cb, float(wta["lambda_out"]), temperature_k=float(net["temperature_k"])
    )
    cfg_wta = WTAConfig(
        v_th0=float(wta["v_th0"]),
        v_supply=float(wta["v_supply"]),
        max_steps=int(wta["max_steps"]),
        threshold_jitter=float(wta["threshold_jitter"]),
    )
    src = mac_source(cb, np.ones(n_rows), physics)

    def run_decision(d: int):
        trace: list = []
        rec = wta_decide(src, cfg_wta, substream(cfg.seed, 1, d), trace=trace)
        return rec, trace

    results = _parallel_map(run_decision, list(range(decisions)), cfg.threads)
    winners = np.array([-1 if rec.winner is None else rec.winner for rec, _ in results])
    rows = []
    for d, (rec, trace) in enumerate(results):
        w = -1 if rec.winner is None else rec.winner
        for step, values, thetas in trace:
            for j in range(n):
                rows.append([d, step, j, _fmt(values[j]), _fmt(thetas[j]), w])
    raster_path = _write_csv(
        out_dir / "wta_raster.csv",
        "wta-raster",
        ["decision", "step", "neuron", "value", "threshold", "winner"],
        rows,
    )
    decided = winners[winners >= 0]
    if decided.size == 0:
        raise ConfigError(
            "every race abstained; raise wta.max_steps or lower wta.v_th0"
        )
    empirical = np.bincount(decided, minlength=n) / decided.size
    reference = reference_softmax(z)
    dist_path = _write_csv(
        out_dir / "wta_distribution.csv",
        "wta-distribution",
        ["neuron", "logit", "empirical", "reference_softmax", "wins", "decisions", "abstentions"],
        [
            [j, _fmt(z[j]), _fmt(empirical[j]), _fmt(reference[j]),
             int(np.sum(decided == j)), decisions, int(np.sum(winners < 0))]
            for j in range(n)
        ],
    )
    return RasterSummary(
        logits=z, empirical=empirical, reference=reference,
        winners=winners, csv_path=raster_path, distribution_path=dist_path,
    )


# --------------------------------------------------------- accuracy curve


@dataclass(frozen=True)
class AccuracySetting:
    v_th0: float
    hidden_lambda: float
    accuracy: dict[int, float]  # n_trials -> accuracy
    abstention: dict[int, float]


@dataclass(frozen=True)
class AccuracySummary:
    settings: list[AccuracySetting]
    float_baseline: float
    n_images: int
    csv_path: Path


def _prefix_vote_predictions(
    winners: np.ndarray, grid: Sequence[int], n_classes: int
) -> dict[int, np.ndarray]:
    """Majority predictions over the first n trials for each grid n
    (-1 where every counted trial abstained)."""
    out: dict[int, np.ndarray] = {}
    for n in grid:
        head = winners[:, :n]
        preds = np.full(head.shape[0], -1, dtype=np.int64)
        for i in range(head.shape[0]):
            vote = tally_votes(head[i], n_classes)
            if vote.is_valid:
                preds[i] = vote.predicted_class
        out[n] = preds
    return out


def run_accuracy_vs_trials(cfg: ExperimentConfig) -> AccuracySummary:
    """Majority-vote accuracy over the trial grid, per operating setting.

    One row per (setting, n_trials) in ``accuracy.csv``, plus a
    ``float_baseline`` row. Images share substreams across settings, so
    threshold comparisons are paired (common random numbers).
    """
    out_dir = cfg.out_dir
    cfg.write_resolved(out_dir)
    acc_cfg = cfg.section("accuracy")
    grid = [int(n) for n in acc_cfg["trial_grid"]]
    n_max = max(grid)
    _, test = ensure_dataset(cfg)
    n_images = min(int(acc_cfg["n_images"]), len(test))
    x, y = test.flat()[:n_images], test.labels[:n_images]

    base_net = _load_archive_network(cfg)
    base_weights = [layer.weights_raw for layer in base_net.layers]
    float_pred = reference_logits(base_weights, x).argmax(axis=1)
    float_baseline = float((float_pred == y).mean())

    settings: list[AccuracySetting] = []
    rows: list[list] = []
    for v_th0 in acc_cfg["v_th0_values"]:
        for lam in acc_cfg["hidden_lambdas"]:
            net = _load_archive_network(cfg, v_th0=float(v_th0), hidden_lambda=float(lam))

            def run_image(i: int) -> np.ndarray:
                return stochastic_winners(net, x[i], n_max, substream(cfg.seed, i))

            winners = np.stack(_parallel_map(run_image, list(range(n_images)), cfg.threads))
            preds = _prefix_vote_predictions(winners, grid, net.n_classes)
            accuracy = {n: float((preds[n] == y).mean()) for n in grid}
            abstention = {n: float((winners[:, :n] < 0).mean()) for n in grid}
            settings.append(
                AccuracySetting(float(v_th0), float(lam), accuracy, abstention)
            )
            for n in grid:
                rows.append(
                    ["stochastic", _fmt(v_th0), _fmt(lam), n,
                     _fmt(accuracy[n]), _fmt(abstention[n])]
                )
    rows.append(["float_baseline", "", "", 0, _fmt(float_baseline), _fmt(0.0)])
    path = _write_csv(
        out_dir / "accuracy.csv",
        "accuracy-vs-trials",
        ["setting", "v_th0", "hidden_lambda", "n_trials", "accuracy", "abstention_rate"],
        rows,
    )
    return AccuracySummary(
        settings=settings, float_baseline=float_baseline, n_images=n_images, csv_path=path
    )


# ------------------------------------------------------------ cost report


REPORTED_CONSTANTS = (
    # (name, value, unit) published reference values, context only
    ("reported_energy_adc_design_pj", 8.7e5, "pJ"),
    ("reported_energy_comparator_design_pj", 3.63e5, "pJ"),
    ("reported_area_adc_design_mm2", 8.51, "mm^2"),
    ("reported_area_comparator_design_mm2", 5.24, "mm^2"),
    ("reported_efficiency_adc_design_tops_per_w", 61.3, "TOPS/W"),
    ("reported_efficiency_comparator_design_tops_per_w", 148.58, "TOPS/W"),
)


@dataclass(frozen=True)
class CostReport:
    """Exact event tallies from a real inference run.

    Counts are events, never estimates: DAC conversions (one per input
    line per trial), MAC products (row-column pairs per applied MAC),
    comparator evaluations (hidden comparators once per trial, output
    comparators once per race step) and WTA race steps. Energy totals
    appear when per-event weights are configured, along with the
    equivalent total for an ADC-per-column readout doing the same run.
    """

    n_images: int
    n_trials: int
    dac_conversions: int
    mac_products: int
    comparator_evals: int
    wta_steps: int
    abstentions: int
    # column reads an ADC-per-column design would perform instead of
    # comparator evaluations: every output line once per applied MAC
    adc_conversions_baseline: int = 0
    energies_pj: dict[str, float] = field(default_factory=dict)
    csv_path: Path | None = None

    def weighted_total_pj(self) -> float:
        e = self.energies_pj
        return (
            self.dac_conversions * e.get("dac_pj", 0.0)
            + self.mac_products * e.get("mac_pj", 0.0)
            + self.comparator_evals * e.get("comparator_pj", 0.0)
        )

    def adc_baseline_total_pj(self) -> float:
        e = self.energies_pj
        return (
            self.dac_conversions * e.get("dac_pj", 0.0)
            + self.mac_products * e.get("mac_pj", 0.0)
            + self.adc_conversions_baseline * e.get("adc_pj", 0.0)
        )


def expected_counts_per_trial(dims: Sequence[int]) -> dict[str, int]:
    """Closed-form per-trial event counts from the layer widths (bias rows
    on every layer after the first)."""
    dims = [int(d) for d in dims]
    mac = 0
    for l in range(len(dims) - 1):
        rows = dims[l] if l == 0 else dims[l] + 1
        mac += rows * dims[l + 1]
    hidden_comparators = sum(dims[1:-1])
    return {
        "dac_conversions": dims[0],
        "mac_products": mac,
        "hidden_comparator_evals": hidden_comparators,
        "output_columns": dims[-1],
        "all_columns": sum(dims[1:]),
    }


def run_cost_report(cfg: ExperimentConfig) -> CostReport:
    """Run inference and tally every countable event exactly.

    Writes ``cost_report.csv`` with count rows, energy rows (when weights
    are configured) and clearly labeled published reference values that
    this package does not simulate.
    """
    out_dir = cfg.out_dir
    cfg.write_resolved(out_dir)
    cost = cfg.section("cost")
    n_images = int(cost["n_images"])
    n_trials = int(cost["trials"])
    _, test = ensure_dataset(cfg)
    n_images = min(n_images, len(test))
    x = test.flat()[:n_images]
    net = _load_archive_network(cfg)
    dims = net.spec.dims
    per_trial = expected_counts_per_trial(dims)

    def run_image(i: int) -> tuple[np.ndarray, np.ndarray]:
        return stochastic_winners(net, x[i], n_trials, substream(cfg.seed, i), return_steps=True)

    results = _parallel_map(run_image, list(range(n_images)), cfg.threads)
    total_steps = int(sum(int(steps.sum()) for _, steps in results))
    abstentions = int(sum(int((w < 0).sum()) for w, _ in results))
    presentations = n_images * n_trials
    dac = presentations * per_trial["dac_conversions"]
    mac = presentations * per_trial["mac_products"]
    comparator = presentations * per_trial["hidden_comparator_evals"] + dims[-1] * total_steps
    adc_baseline_columns = presentations * per_trial["all_columns"]

    energies = {k: float(v) for k, v in cost["energies"].items()}
    report = CostReport(
        n_images=n_images,
        n_trials=n_trials,
        dac_conversions=dac,
        mac_products=mac,
        comparator_evals=comparator,
        wta_steps=total_steps,
        abstentions=abstentions,
        energies_pj=energies,
        adc_conversions_baseline=adc_baseline_columns,
    )

    rows: list[list] = [
        ["count", "images", n_images, "images", ""],
        ["count", "trials_per_image", n_trials, "trials", ""],
        ["count", "dac_conversions", dac, "events", ""],
        ["count", "mac_products", mac, "events", ""],
        ["count", "comparator_evals", comparator, "events", ""],
        ["count", "wta_steps", total_steps, "events", ""],
        ["count", "abstentions", abstentions, "events", ""],
        ["count", "adc_conversions_baseline", adc_baseline_columns, "events",
         "ADC-per-column readout doing the same run"],
    ]
    total = report.weighted_total_pj()
    adc_total = report.adc_baseline_total_pj()
    rows.append(["energy", "comparator_design_total_pj", _fmt(total), "pJ", ""])
    rows.append(["energy", "adc_baseline_total_pj", _fmt(adc_total), "pJ", ""])
    if total > 0:
        rows.append(
            ["energy", "adc_over_comparator_ratio", _fmt(adc_total / total), "ratio", ""]
        )
    for name, value, unit in REPORTED_CONSTANTS:
        rows.append(["reported", name, _fmt(value), unit,
                     "published reference value, not simulated"])
    path = _write_csv(
        out_dir / "cost_report.csv",
        "cost-report",
        ["kind", "name", "value", "unit", "note"],
        rows,
    )
    object.__setattr__(report, "csv_path", path)
    return report

"""Command-line entry point.

Subcommands: ``train``, ``sigmoid-sweep``, ``wta-raster``, ``accuracy``,
``cost-report``. Exit codes: 0 success, 1 configuration error, 2 data
error (missing/unreadable files), 3 numeric failure (diverged training).
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .config import load_config
from .errors import ConfigError, DataError, NumericError
from .experiments import (
    run_accuracy_vs_trials,
    run_cost_report,
    run_sigmoid_sweep,
    run_train,
    run_wta_raster,
)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; that code is reserved for data
    # problems here, so usage errors become ConfigError -> exit 1
    def error(self, message: str):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="stochbar",
        description="Stochastic crossbar accelerator simulator: train the float "
        "reference, sweep firing curves, trace WTA races, measure vote accuracy, "
        "and tally event costs.",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", metavar="PATH", default=None,
                       help="YAML config; defaults apply for anything not set")
        p.add_argument("--seed", metavar="N", type=int, default=None,
                       help="override the config seed")
        p.add_argument("--out", metavar="DIR", default=None,
                       help="override the output directory")
        p.add_argument("--trials", metavar="N", type=int, default=None,
                       help="override the runner's trial/decision count "
                            "(accuracy: cap and extend the trial grid)")
        p.add_argument("--threads", metavar="N", type=int, default=None,
                       help="worker threads; 0 = one per CPU")
        return p

    add("train", "train the float reference network and archive weights")
    add("sigmoid-sweep", "empirical vs analytic firing curves over an SNR knob")
    add("wta-raster", "per-step WTA race traces and the win distribution")
    add("accuracy", "majority-vote accuracy over the trial grid")
    add("cost-report", "exact event tallies for an inference run")
    return parser


def _overrides(args: argparse.Namespace) -> dict:
    over: dict = {}
    if args.seed is not None:
        over["seed"] = args.seed
    if args.out is not None:
        over["out_dir"] = args.out
    if args.threads is not None:
        over["threads"] = args.threads
    if args.trials is not None:
        n = int(args.trials)
        if n < 1:
            raise ConfigError(f"--trials must be >= 1, got {n}")
        if args.command == "sigmoid-sweep":
            over["sweep"] = {"trials": n}
        elif args.command == "wta-raster":
            over["wta"] = {"decisions": n}
        elif args.command == "accuracy":
            grid = [g for g in (1, 2, 4, 8, 16, 32, 64, 128, 256) if g < n]
            over["accuracy"] = {"trial_grid": grid + [n]}
        elif args.command == "cost-report":
            over["cost"] = {"trials": n}
        # train has no trial knob; the flag is accepted and unused
    return over


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = load_config(args.config, _overrides(args))
        if args.command == "train":
            summary = run_train(cfg)
            print(
                f"trained {len(cfg.section('network')['dims']) - 1} layers: "
                f"float test accuracy {summary.float_test_accuracy:.4f}, "
                f"archive {summary.archive_path}"
            )
        elif args.command == "sigmoid-sweep":
            summary = run_sigmoid_sweep(cfg)
            slopes = ", ".join(f"{p.knob_value:g}:{p.slope_at_zero:.3f}" for p in summary.points)
            print(f"sweep {summary.axis} -> {summary.csv_path} (slopes at z=0: {slopes})")
        elif args.command == "wta-raster":
            summary = run_wta_raster(cfg)
            n_abstain = int((summary.winners < 0).sum())
            print(
                f"raster {len(summary.winners)} decisions -> {summary.csv_path} "
                f"({n_abstain} abstentions)"
            )
        elif args.command == "accuracy":
            summary = run_accuracy_vs_trials(cfg)
            best = max(s.accuracy[max(s.accuracy)] for s in summary.settings)
            print(
                f"accuracy over {summary.n_images} images -> {summary.csv_path} "
                f"(float baseline {summary.float_baseline:.4f}, best vote {best:.4f})"
            )
        elif args.command == "cost-report":
            report = run_cost_report(cfg)
            print(
                f"cost report -> {report.csv_path} (MAC products {report.mac_products}, "
                f"comparator evals {report.comparator_evals})"
            )
        return EXIT_OK
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())

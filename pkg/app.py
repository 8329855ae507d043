"""
Oscillator verification harness - command-line front end

Runs the verification experiments for ℤₙ-invariant oscillator dynamics on
cones and Bargmann–Fock states, writes CSV reports and renders SVG figures.

    oscillator run <experiment|all> [--config PATH] [--out DIR] [--seed INT]
    oscillator figures [--config PATH] [--which trajectory,sector,spectrum] [--out DIR]
    oscillator list

Exit codes: 0 all rows pass, 1 at least one row fails, 2 configuration or I/O error.
"""
import argparse
import configparser
import sys
from typing import Optional

from pydantic import ValidationError

from oscillator.experiments import EXPERIMENTS, equation_labels, run_all, run_experiment
from oscillator.figures import FIGURE_NAMES, render_figures
from oscillator.logging_utils import get_logger
from oscillator.reporting import summarize
from oscillator.settings import load_config


logger = get_logger("oscillator.cli")

EXIT_OK = 0
EXIT_FAILED_ROWS = 1
EXIT_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oscillator",
        description="Verify oscillator dynamics on cones and in Bargmann–Fock space.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run one experiment, or 'all'")
    run.add_argument("experiment", help="experiment name or 'all'")
    run.add_argument("--config", help="INI configuration file (default: configs/default.ini)")
    run.add_argument("--out", help="output directory for CSV reports")
    run.add_argument("--seed", type=int, help="seed for randomized cases")

    figures = commands.add_parser("figures", help="render SVG figures")
    figures.add_argument("--config", help="INI configuration file (default: configs/default.ini)")
    figures.add_argument(
        "--which",
        default=",".join(FIGURE_NAMES),
        help=f"comma-separated subset of {', '.join(FIGURE_NAMES)}",
    )
    figures.add_argument("--out", help="output directory for SVG files")

    commands.add_parser("list", help="list experiments and the relations each covers")
    return parser


def _list_experiments() -> int:
    for name, exp in EXPERIMENTS.items():
        labels = ", ".join(f"{relation} {equation}" for relation, equation in equation_labels(exp.relations))
        print(f"{name}: {labels}")
    return EXIT_OK


def _run(args: argparse.Namespace) -> int:
    config = load_config(args.config, output_dir=args.out, seed=args.seed)
    if args.experiment == "all":
        rows = run_all(config)
    else:
        rows = run_experiment(args.experiment, config)

    summary = summarize(args.experiment, rows)
    print(f"{args.experiment}: {summary.passed}/{summary.total} rows passed -> {config.output_dir}")
    for case_id in summary.failed_cases:
        print(f"  FAILED {case_id}")
    return EXIT_OK if summary.ok else EXIT_FAILED_ROWS


def _figures(args: argparse.Namespace) -> int:
    config = load_config(args.config, output_dir=args.out)
    which = [name.strip() for name in args.which.split(",") if name.strip()]
    for path in render_figures(config, which):
        print(path)
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "list":
            return _list_experiments()
        if args.command == "run":
            return _run(args)
        return _figures(args)
    except (ValidationError, configparser.Error, ValueError, OSError) as e:
        logger.error("Command failed", extra={"command": args.command, "error": str(e)})
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

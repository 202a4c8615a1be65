"""Command-line entry point: ``evobench {validate,run,analyze,report}``.

Exit codes: 0 ok, 2 configuration error, 3 I/O error, 4 bad input data.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

from .analysis import analysis_json, analyze, pairwise_csv
from .config import Batch, ConfigError, StatsConfig, apply_overrides, batch_violations, load_batch, parse_override
from .harness import PersistenceError, ResultsFormatError, read_results, run_batch, to_sample_sets
from .report import render_all
from .stats import mean_var

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_DATA = 4

RESULTS_FILE = "results.csv"
ANALYSIS_FILE = "analysis.json"
PAIRWISE_FILE = "pairwise.csv"


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("EVOBENCH_WORKERS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="batch definition file")
    common.add_argument("--out", type=Path, default=Path("."), help="output directory")
    common.add_argument("--workers", type=int, default=None, help="parallel runs (default $EVOBENCH_WORKERS or 1)")
    common.add_argument("--override", action="append", default=[], metavar="K=V",
                        help="override a config value, e.g. runs_per_config=2 or stats.t_threshold=1.7")
    common.add_argument("--seed", type=int, default=None, help="override the batch master seed")

    parser = argparse.ArgumentParser(prog="evobench", description="GA variant benchmark on Schaffer F6")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="check a batch file")
    sub.add_parser("run", parents=[common], help="execute a batch and write results.csv")
    p_analyze = sub.add_parser("analyze", parents=[common], help="statistics over results.csv")
    p_analyze.add_argument("--results", type=Path, help=f"results CSV (default OUT/{RESULTS_FILE})")
    p_report = sub.add_parser("report", parents=[common], help="render the comparison tables")
    p_report.add_argument("--analysis", type=Path, help=f"analysis JSON (default OUT/{ANALYSIS_FILE})")
    return parser


def _load(args, required: bool) -> Batch | None:
    if args.config is None:
        if required:
            raise CliError(EXIT_CONFIG, "--config is required for this command")
        batch = None
    else:
        try:
            batch = load_batch(args.config)
        except ConfigError as exc:
            raise CliError(EXIT_CONFIG, str(exc)) from None
    try:
        overrides = [parse_override(text) for text in args.override]
        if batch is None:
            if not overrides:
                return None
            batch = Batch(configs={})
        batch = apply_overrides(batch, overrides)
    except ConfigError as exc:
        raise CliError(EXIT_CONFIG, str(exc)) from None
    if args.seed is not None:
        batch = replace(batch, master_seed=args.seed)
    return batch


def _check(batch: Batch) -> None:
    problems = batch_violations(batch)
    if problems:
        raise CliError(EXIT_CONFIG, "invalid configuration:\n" + "\n".join(f"  - {p}" for p in problems))


def _write_outputs(out_dir: Path, files: dict[str, str]) -> None:
    """Write each file via ``<name>.partial`` and rename into place."""
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        for name, text in files.items():
            partial = out_dir / f"{name}.partial"
            partial.write_text(text, encoding="utf-8", newline="")
            os.replace(partial, out_dir / name)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write to {out_dir}: {exc}") from None


def cmd_validate(args) -> int:
    batch = _load(args, required=True)
    _check(batch)
    print(f"ok: {len(batch.configs)} configurations x {batch.runs_per_config} runs")
    return EXIT_OK


def cmd_run(args) -> int:
    batch = _load(args, required=True)
    _check(batch)
    workers = args.workers or _default_workers()
    try:
        args.out.mkdir(parents=True, exist_ok=True)
        records = run_batch(batch, workers=workers, out_path=args.out / RESULTS_FILE)
    except (PersistenceError, OSError) as exc:
        raise CliError(EXIT_IO, str(exc)) from None
    print(f"{'config_id':<16} {'mean_evals':>12} {'successes':>10}")
    for sample in to_sample_sets(records):
        mean, _ = mean_var(sample)
        print(f"{sample.label:<16} {mean:>12.6g} {sample.n - sum(sample.censored):>6}/{sample.n}")
    print(f"wrote {len(records)} runs to {args.out / RESULTS_FILE}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    batch = _load(args, required=False)
    stats = batch.stats if batch is not None else StatsConfig()
    if batch is not None:
        problems = [p for p in batch_violations(batch) if p.startswith("stats.")]
        if problems:
            raise CliError(EXIT_CONFIG, "invalid configuration:\n" + "\n".join(f"  - {p}" for p in problems))
    path = args.results or args.out / RESULTS_FILE
    try:
        records = read_results(path)
    except FileNotFoundError:
        raise CliError(EXIT_DATA, f"results file not found: {path}") from None
    except ResultsFormatError as exc:
        raise CliError(EXIT_DATA, f"{path}: {exc}") from None
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read {path}: {exc}") from None
    try:
        result = analyze(records, stats)
    except ValueError as exc:
        raise CliError(EXIT_DATA, f"{path}: {exc}") from None
    _write_outputs(args.out, {ANALYSIS_FILE: analysis_json(result), PAIRWISE_FILE: pairwise_csv(result)})
    classes = result["best_of_breed"]["partition"]["classes"]
    for i, members in enumerate(classes):
        print(f"class {i}: {', '.join(members)}")
    return EXIT_OK


def cmd_report(args) -> int:
    path = args.analysis or args.out / ANALYSIS_FILE
    try:
        analysis = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise CliError(EXIT_DATA, f"analysis file not found: {path}") from None
    except (OSError, ValueError) as exc:
        raise CliError(EXIT_DATA, f"cannot read analysis {path}: {exc}") from None
    try:
        files = render_all(analysis)
    except (KeyError, TypeError, IndexError) as exc:
        raise CliError(EXIT_DATA, f"malformed analysis {path}: missing {exc}") from None
    _write_outputs(args.out, files)
    for name in files:
        print(args.out / name)
    return EXIT_OK


COMMANDS = {"validate": cmd_validate, "run": cmd_run, "analyze": cmd_analyze, "report": cmd_report}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except CliError as exc:
        print(f"evobench: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point.

Subcommands: run, prove-bound, gap, verify-censor, list-strategies. All
machine-readable output is byte-identical across identical command lines,
including the seed. Error paths emit one JSON line on stderr.

Exit codes: 0 success, 2 configuration or usage error, 3 unknown strategy,
4 censor violation or failed noninterference check.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
from fractions import Fraction
from typing import Optional

from ._version import __version__
from .analysis import (
    CLASSICAL_FLOOR,
    DEFAULT_FAILURE_PROBABILITY,
    bell_gap_report,
    check_feature_ii,
    feature_i_from_stats,
    hoeffding_radius,
    prove_bound,
    render_stats_text,
    stats_to_csv,
)
from .censor import verify_transcript_invariance
from .protocol import (
    DEFAULT_PAYLOAD_BYTES,
    DEFAULT_ROUNDS,
    DEFAULT_SHARED_TAPE_BYTES,
    ExperimentAborted,
    RunConfig,
    draw_settings,
    run_experiment,
)
from .quantum import QUANTUM_ORACLE_ID, quantum_experiment
from .randomness import ByteStream, derive_run_seed, mix64
from .strategies import build_registry

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_UNKNOWN_STRATEGY = 3
EXIT_VIOLATION = 4

DEFAULT_N_RUNS = 100_000
DEFAULT_SEED = 0

SEED_ENV = "BELLGAME_SEED"
OUTPUT_ENV = "BELLGAME_OUTPUT"

_EPILOG = f"""\
exit codes:
  {EXIT_OK}  success
  {EXIT_CONFIG}  configuration or usage error
  {EXIT_UNKNOWN_STRATEGY}  unknown strategy id
  {EXIT_VIOLATION}  censor violation / failed noninterference check

environment:
  {SEED_ENV}    default master seed when --seed is not given
  {OUTPUT_ENV}  default output path when --output is not given
"""


def _error_line(kind: str, **fields) -> str:
    payload = {"error": kind, **fields}
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


class _Parser(argparse.ArgumentParser):
    # single-line machine-parsable diagnostics on stderr
    def error(self, message):
        print(_error_line("config", detail=message), file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)


def _add_experiment_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, default=DEFAULT_N_RUNS, help="number of runs")
    p.add_argument("--seed", type=int, default=None, help=f"master seed (env {SEED_ENV})")
    p.add_argument("--rounds", type=int, default=DEFAULT_ROUNDS, help="message rounds per run")
    p.add_argument("--payload-bytes", type=int, default=DEFAULT_PAYLOAD_BYTES, help="frame size")
    p.add_argument(
        "--tape-bytes", type=int, default=DEFAULT_SHARED_TAPE_BYTES,
        help="shared tape size",
    )


def _add_output_options(p: argparse.ArgumentParser, formats: tuple[str, ...]) -> None:
    p.add_argument(
        "--output", default=None, help=f"output path, '-' for stdout (env {OUTPUT_ENV})"
    )
    p.add_argument("--format", choices=formats, default="text", help="output format")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="bellgame",
        description=__doc__.splitlines()[0],
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment with one strategy")
    p_run.add_argument("--strategy", required=True, help="strategy id (see list-strategies)")
    _add_experiment_options(p_run)
    p_run.add_argument("--censor", choices=("on", "off"), default="on")
    _add_output_options(p_run, ("text", "jsonl", "csv"))

    p_bound = sub.add_parser("prove-bound", help="exact floor over the eight instruction sets")
    _add_output_options(p_bound, ("text", "jsonl", "csv"))

    p_gap = sub.add_parser("gap", help="classical strategy vs the quantum oracle")
    p_gap.add_argument("--strategy", default="negotiation", help="classical strategy id")
    _add_experiment_options(p_gap)
    _add_output_options(p_gap, ("text", "jsonl"))

    p_verify = sub.add_parser("verify-censor", help="whole-run counterfactual replay checks")
    p_verify.add_argument("--strategy", default="all", help="strategy id or 'all'")
    p_verify.add_argument("--n", type=int, default=100, help="replay trials per strategy")
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--rounds", type=int, default=DEFAULT_ROUNDS)
    p_verify.add_argument("--payload-bytes", type=int, default=DEFAULT_PAYLOAD_BYTES)
    p_verify.add_argument("--tape-bytes", type=int, default=DEFAULT_SHARED_TAPE_BYTES)
    p_verify.add_argument("--output", default=None)

    p_list = sub.add_parser("list-strategies", help="available strategy ids")
    p_list.add_argument("--output", default=None)

    return parser


def _resolve_seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    return int(env) if env else DEFAULT_SEED


@contextlib.contextmanager
def _open_output(args):
    path = getattr(args, "output", None)
    if path is None:
        path = os.environ.get(OUTPUT_ENV)
    if path is None or path == "-":
        yield sys.stdout
        return
    with open(path, "w", newline="\n") as fh:
        yield fh


def _config_from(args, censor_enabled: bool = True) -> RunConfig:
    return RunConfig(
        rounds=args.rounds,
        payload_bytes=args.payload_bytes,
        shared_tape_bytes=args.tape_bytes,
        censor_enabled=censor_enabled,
    )


def _lookup_strategy(registry, strategy_id: str):
    if strategy_id not in registry:
        available = sorted(registry) + [QUANTUM_ORACLE_ID]
        print(
            _error_line("unknown-strategy", strategy=strategy_id, available=available),
            file=sys.stderr,
        )
        raise SystemExit(EXIT_UNKNOWN_STRATEGY)
    return registry[strategy_id]


def _run_report_text(strategy_id, stats, failure_probability=DEFAULT_FAILURE_PROBABILITY) -> str:
    """Narrative report: agreement on equal settings, overall balance, the
    exact floor, then the verdict."""
    eq_same, eq_diff = stats.equal_setting_counts()
    f1 = feature_i_from_stats(stats)
    f2 = check_feature_ii(stats, failure_probability=failure_probability)
    radius = hoeffding_radius(stats.n_runs, failure_probability)
    observed = stats.overall_same_float
    floor = float(CLASSICAL_FLOOR)
    if observed >= floor - radius:
        verdict = (
            "at or above the classical floor: consistent with an "
            "agreed-instruction-set model"
        )
    else:
        verdict = (
            "below the classical floor: no censor-compliant strategy that "
            "always agrees on equal settings can produce this"
        )
    lines = [
        f"strategy: {strategy_id}   runs: {stats.n_runs}",
        (
            f"feature (i)  equal settings give equal colors: "
            f"{'HOLDS' if f1 else 'FAILS'} "
            f"({eq_diff} violations in {eq_same + eq_diff} equal-setting runs)"
        ),
        (
            f"feature (ii) overall same-color fraction {observed:.6f} "
            f"within {f2.tolerance:.6f} of 1/2: {'HOLDS' if f2.holds else 'FAILS'}"
        ),
        f"classical floor: {CLASSICAL_FLOOR} = {floor:.6f}",
        f"verdict: {verdict}",
        "",
        render_stats_text(stats),
    ]
    return "\n".join(lines)


def _stats_json_line(stats, failure_probability=DEFAULT_FAILURE_PROBABILITY) -> str:
    doc = stats.to_json_dict()
    doc["type"] = "stats"
    doc["feature_i_holds"] = feature_i_from_stats(stats)
    f2 = check_feature_ii(stats, failure_probability=failure_probability)
    doc["feature_ii_holds"] = f2.holds
    doc["feature_ii_tolerance"] = f2.tolerance
    doc["floor"] = str(CLASSICAL_FLOOR)
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _cmd_run(args) -> int:
    seed = _resolve_seed(args)
    if args.n < 1:
        print(_error_line("config", detail="--n must be >= 1"), file=sys.stderr)
        return EXIT_CONFIG
    censor_on = args.censor == "on"
    config = _config_from(args, censor_enabled=censor_on)
    registry = build_registry(config.payload_bytes)

    with _open_output(args) as out:
        sink = out if args.format == "jsonl" else None
        try:
            if args.strategy == QUANTUM_ORACLE_ID:
                stats = quantum_experiment(args.n, seed, config=config, sink=sink)
            else:
                strategy = _lookup_strategy(registry, args.strategy)
                stats = run_experiment(config, strategy, args.n, seed, sink=sink)
        except ExperimentAborted as aborted:
            print(
                _error_line(
                    "censor-violation",
                    strategy=args.strategy,
                    completed_runs=aborted.completed_runs,
                    violation=json.loads(aborted.violation.to_json()),
                ),
                file=sys.stderr,
            )
            return EXIT_VIOLATION
        if args.format == "jsonl":
            out.write(_stats_json_line(stats) + "\n")
        elif args.format == "csv":
            out.write(stats_to_csv(stats))
        else:
            out.write(_run_report_text(args.strategy, stats) + "\n")
    return EXIT_OK


def _cmd_prove_bound(args) -> int:
    try:
        report = prove_bound()
    except RuntimeError as defect:
        print(_error_line("bound-defect", detail=str(defect)), file=sys.stderr)
        return 1
    with _open_output(args) as out:
        if args.format == "jsonl":
            out.write(report.to_json() + "\n")
        elif args.format == "csv":
            out.write("instruction_set,same_color_fraction\n")
            for iset, frac in report.per_set_fractions.items():
                out.write(f"{iset.label},{frac}\n")
        else:
            out.write(report.to_text() + "\n")
    return EXIT_OK if report.minimum == Fraction(5, 9) else 1


def _cmd_gap(args) -> int:
    seed = _resolve_seed(args)
    if args.n < 1:
        print(_error_line("config", detail="--n must be >= 1"), file=sys.stderr)
        return EXIT_CONFIG
    config = _config_from(args, censor_enabled=True)
    registry = build_registry(config.payload_bytes)
    try:
        if args.strategy == QUANTUM_ORACLE_ID:
            classical = quantum_experiment(args.n, seed, config=config)
        else:
            strategy = _lookup_strategy(registry, args.strategy)
            classical = run_experiment(config, strategy, args.n, seed)
    except ExperimentAborted as aborted:
        print(
            _error_line(
                "censor-violation",
                strategy=args.strategy,
                completed_runs=aborted.completed_runs,
                violation=json.loads(aborted.violation.to_json()),
            ),
            file=sys.stderr,
        )
        return EXIT_VIOLATION
    quantum = quantum_experiment(args.n, seed, config=config)
    report = bell_gap_report(classical, quantum)
    with _open_output(args) as out:
        if args.format == "jsonl":
            out.write(report.to_json() + "\n")
        else:
            out.write(f"classical strategy: {args.strategy}\n")
            out.write(report.to_text() + "\n")
    if report.warning:
        print(_error_line("power-warning", detail=report.warning), file=sys.stderr)
    return EXIT_OK


def _cmd_verify_censor(args) -> int:
    seed = _resolve_seed(args)
    if args.n < 1:
        print(_error_line("config", detail="--n must be >= 1"), file=sys.stderr)
        return EXIT_CONFIG
    config = RunConfig(
        rounds=args.rounds,
        payload_bytes=args.payload_bytes,
        shared_tape_bytes=args.tape_bytes,
        censor_enabled=True,
    )
    registry = build_registry(config.payload_bytes)
    if args.strategy == "all":
        chosen = list(registry.values())
    else:
        chosen = [_lookup_strategy(registry, args.strategy)]

    failures = 0
    with _open_output(args) as out:
        for index, strategy in enumerate(chosen):
            sid = strategy.strategy_id
            if strategy.requires_censor_off:
                out.write(f"{sid}: declared censor-off; skipped\n")
                continue
            lane = mix64(seed ^ (index + 1))
            bad = 0
            for trial in range(args.n):
                trial_seed = derive_run_seed(lane, trial)
                settings = draw_settings(ByteStream(trial_seed, b"settings"))
                if not verify_transcript_invariance(config, strategy, settings, trial_seed, run_index=trial):
                    bad += 1
            if bad:
                failures += 1
                out.write(f"{sid}: FAILED {bad}/{args.n} counterfactual replays\n")
            else:
                out.write(f"{sid}: ok ({args.n} runs, transcripts setting-invariant)\n")
    if failures:
        print(_error_line("noninterference-failure", strategies=failures), file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def _cmd_list_strategies(args) -> int:
    registry = build_registry()
    with _open_output(args) as out:
        for sid, strategy in registry.items():
            notes = []
            if strategy.agreement_based:
                notes.append("agreed-set")
            if strategy.requires_censor_off:
                notes.append("requires censor off")
            suffix = f"  ({', '.join(notes)})" if notes else ""
            out.write(f"{sid}{suffix}\n")
        out.write(f"{QUANTUM_ORACLE_ID}  (color source, no wings)\n")
    return EXIT_OK


_COMMANDS = {
    "run": _cmd_run,
    "prove-bound": _cmd_prove_bound,
    "gap": _cmd_gap,
    "verify-censor": _cmd_verify_censor,
    "list-strategies": _cmd_list_strategies,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    except ValueError as exc:
        print(_error_line("config", detail=str(exc)), file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())

"""
Command line entry point: `sda <command> ...`.

Exit status is 0 on success, 1 on usage, input or file errors and 2 when a heuristic that may
fail (EC, CBS, IEC) could not anonymize the graph.
"""

import argparse
import logging
import os
import statistics
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Sequence

from sda_toolkit.anonymizers import Algorithm, AnonymizerConfig, anonymize, format_run_log
from sda_toolkit.config import load_config
from sda_toolkit.constants.defaults import COMMUNITY_COUNT, RMAT_A, RMAT_B, RMAT_C, RMAT_D
from sda_toolkit.datagen import RmatParams, assign_communities, generate_rmat
from sda_toolkit.exact import brute_force_add_edge_optimum, build_add_edge_model, build_full_model, export_lp
from sda_toolkit.graph import Graph, SplitRecord, read_graph_dir, write_graph_dir
from sda_toolkit.metrics import compute_metrics
from sda_toolkit.privacy import audit, violation_curve
from sda_toolkit.utils import format_ratio, from_yaml, log_errors, to_yaml

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2

LOG_LEVEL_ENV = "SDA_LOG_LEVEL"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")

SPLITS_FILENAME = "splits.yaml"
RUN_LOG_FILENAME = "run.log"
SUMMARY_FILENAME = "summary.yaml"
MANIFEST_FILENAME = "manifest.yaml"


class UsageError(ValueError):
    pass


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore
        raise UsageError(message)


@dataclass
class RunManifest:
    command: str
    inputs: list[str]
    output_dir: str
    algorithm: str | None = None
    k: int | None = None
    omega: int | None = None
    seed: int | None = None
    artifacts: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "output_dir": self.output_dir,
            "algorithm": self.algorithm,
            "k": self.k,
            "omega": self.omega,
            "seed": self.seed,
            "artifacts": self.artifacts,
        }


def configure_logging(level: str | None) -> None:
    level = (level or os.environ.get(LOG_LEVEL_ENV) or "INFO").upper()
    if level not in LOG_LEVELS:
        logging.basicConfig(level=logging.INFO, format=LOG_FORMAT, force=True)
        logger.warning(f"Unknown log level {level!r}, using INFO")
        return
    logging.basicConfig(level=level, format=LOG_FORMAT, force=True)


def required(args: argparse.Namespace, name: str) -> Any:
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name.replace('_', '-')} is required (on the command line or in the config file)")
    return value


def write_yaml(path: Path, obj: Any) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(to_yaml(obj))
    return path


def emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)
        logger.info(f"Wrote {out}")


def read_splits(path: Path) -> list[SplitRecord]:
    return [SplitRecord.from_dict(item) for item in from_yaml(path.read_text()) or []]


def anonymizer_config(args: argparse.Namespace, algorithm: Algorithm, k: int, seed: int) -> AnonymizerConfig:
    return AnonymizerConfig(k=k, algorithm=algorithm, omega=args.omega, seed=seed, redirect=not args.no_redirect)


@log_errors(logger, "Anonymization failed", return_on_error=EXIT_USAGE)
def cmd_anonymize(args: argparse.Namespace) -> int:
    start_time = time.time()
    out: Path = required(args, "out")
    g = read_graph_dir(args.input)
    cfg = anonymizer_config(args, Algorithm(args.alg), required(args, "k"), args.seed)
    result = anonymize(g, cfg)
    artifacts = write_graph_dir(result.graph, out)
    artifacts.append(write_yaml(out / SPLITS_FILENAME, [split.to_dict() for split in result.splits]))
    run_log = out / RUN_LOG_FILENAME
    run_log.write_text(format_run_log(result.operations))
    artifacts.append(run_log)
    artifacts.append(write_yaml(out / SUMMARY_FILENAME, result.summary()))
    manifest = RunManifest(
        command="anonymize",
        inputs=[str(args.input)],
        output_dir=str(out),
        algorithm=cfg.algorithm.value,
        k=cfg.k,
        omega=result.omega,
        seed=cfg.seed,
        artifacts=[path.name for path in artifacts] + [MANIFEST_FILENAME],
    )
    write_yaml(out / MANIFEST_FILENAME, manifest.to_dict())
    logger.info(f"Wrote {out} in {time.time() - start_time:.3f} sec")
    if not result.success:
        logger.error(f"{cfg.algorithm.value} could not make the graph {cfg.k}-structurally diverse")
        return EXIT_INFEASIBLE
    return EXIT_OK


@log_errors(logger, "Audit failed", return_on_error=EXIT_USAGE)
def cmd_audit(args: argparse.Namespace) -> int:
    g = read_graph_dir(args.input)
    k = required(args, "k")
    result = audit(g, k)
    fraction = format_ratio(result.violation_fraction)
    logger.info(f"{len(result.violating)} vertices ({fraction}) violate {k}-structural diversity")
    report: dict[str, Any] = result.to_dict()
    if args.curve:
        curve = violation_curve(g, args.curve)
        report["curve"] = [{"k": curve_k, "violation_fraction": value} for curve_k, value in curve.items()]
    emit(to_yaml(report), args.out)
    return EXIT_OK


@log_errors(logger, "Metrics computation failed", return_on_error=EXIT_USAGE)
def cmd_metrics(args: argparse.Namespace) -> int:
    g = read_graph_dir(args.input)
    reference = read_graph_dir(args.reference) if args.reference is not None else None
    splits = read_splits(args.splits) if args.splits is not None else []
    report = compute_metrics(
        g, reference, splits, sample_size=args.sample, seed=args.seed, communities=args.communities
    )
    emit(to_yaml(report.to_dict()), args.out)
    return EXIT_OK


@log_errors(logger, "Graph generation failed", return_on_error=EXIT_USAGE)
def cmd_gen(args: argparse.Namespace) -> int:
    start_time = time.time()
    out: Path = required(args, "out")
    params = RmatParams(
        n=required(args, "n"), m=required(args, "m"), a=args.a, b=args.b, c=args.c, d=args.d, seed=args.seed
    )
    g = assign_communities(generate_rmat(params), args.communities, args.seed)
    artifacts = write_graph_dir(g, out)
    manifest = RunManifest(
        command="gen",
        inputs=[],
        output_dir=str(out),
        seed=args.seed,
        artifacts=[path.name for path in artifacts] + [MANIFEST_FILENAME],
    )
    write_yaml(out / MANIFEST_FILENAME, manifest.to_dict())
    logger.info(f"Wrote {out} in {time.time() - start_time:.3f} sec")
    return EXIT_OK


@log_errors(logger, "Model export failed", return_on_error=EXIT_USAGE)
def cmd_export_ip(args: argparse.Namespace) -> int:
    g = read_graph_dir(args.input)
    k = required(args, "k")
    if args.model == "add-edge":
        model = build_add_edge_model(g, k)
    else:
        budget: Callable[[int], int] | None = None
        if args.budget is not None:
            cap: int = args.budget
            budget = lambda v: max(1, min(g.degree(v), cap))  # noqa: E731
        model = build_full_model(g, k, args.omega, budget)
    emit(export_lp(model), args.out)
    return EXIT_OK


def compare_row(g: Graph, args: argparse.Namespace, algorithm: Algorithm, k: int) -> dict[str, Any]:
    results = [
        anonymize(g, anonymizer_config(args, algorithm, k, args.seed + repeat)) for repeat in range(args.repeats)
    ]
    summaries = [result.summary() for result in results]
    row: dict[str, Any] = {
        "algorithm": algorithm.value,
        "k": k,
        "runs": len(results),
        "success_rate": sum(result.success for result in results) / len(results),
        "new_edge_ratio": statistics.mean(s["new_edge_ratio"] for s in summaries),
        "split_vertex_ratio": statistics.mean(s["split_vertex_ratio"] for s in summaries),
    }
    first = results[0]
    if first.success:
        metrics = compute_metrics(first.graph, g, first.splits, sample_size=args.sample, seed=args.seed)
        row.update(
            cc=metrics.cc,
            aspl=metrics.aspl,
            dc=metrics.dc,
            ec_corr=metrics.ec_corr,
            disconnected_pair_fraction=metrics.disconnected_pair_fraction,
        )
    return row


@log_errors(logger, "Comparison failed", return_on_error=EXIT_USAGE)
def cmd_compare(args: argparse.Namespace) -> int:
    if args.repeats < 1:
        raise UsageError("--repeats must be at least 1")
    g = read_graph_dir(args.input)
    rows = []
    for alg in args.algs:
        for k in args.ks:
            rows.append(compare_row(g, args, Algorithm(alg), k))
            logger.info(f"Compared {alg} at k = {k}")
    emit(to_yaml(rows), args.out)
    return EXIT_OK


@log_errors(logger, "Oracle search failed", return_on_error=EXIT_USAGE)
def cmd_oracle(args: argparse.Namespace) -> int:
    g = read_graph_dir(args.input)
    result = brute_force_add_edge_optimum(g, required(args, "k"), args.budget)
    emit(to_yaml(result.to_dict()), args.out)
    return EXIT_OK


def build_parser() -> tuple[ArgumentParser, dict[str, ArgumentParser]]:
    common = ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="TOML file with option defaults in an [sda] table")
    common.add_argument("--log-level", choices=LOG_LEVELS, help=f"overrides ${LOG_LEVEL_ENV}, INFO by default")

    parser = ArgumentParser(prog="sda", description="k-structural diversity anonymization of social graphs")
    subparsers = parser.add_subparsers(dest="command", required=True)
    commands: dict[str, ArgumentParser] = {}

    def add_command(name: str, handler: Callable[[argparse.Namespace], int], help: str) -> ArgumentParser:
        command = subparsers.add_parser(name, parents=[common], help=help)
        command.set_defaults(handler=handler)
        commands[name] = command
        return command

    def add_input(command: ArgumentParser) -> None:
        command.add_argument("input", type=Path, help="directory with edges.txt and communities.txt")

    def add_out(command: ArgumentParser, help: str) -> None:
        command.add_argument("--out", type=Path, help=help)

    algorithms = [algorithm.value for algorithm in Algorithm]

    anonymize_cmd = add_command("anonymize", cmd_anonymize, "anonymize a graph")
    add_input(anonymize_cmd)
    anonymize_cmd.add_argument("--alg", choices=algorithms, default=Algorithm.FS.value)
    anonymize_cmd.add_argument("--k", type=int)
    anonymize_cmd.add_argument("--omega", type=int, help="split penalty, |V|^2 by default")
    anonymize_cmd.add_argument("--seed", type=int, default=0)
    anonymize_cmd.add_argument("--no-redirect", action="store_true", help="disable edge redirection")
    add_out(anonymize_cmd, "output directory")

    audit_cmd = add_command("audit", cmd_audit, "report vertices exposed to community identification")
    add_input(audit_cmd)
    audit_cmd.add_argument("--k", type=int)
    audit_cmd.add_argument("--curve", type=int, nargs="+", help="also report the violation fraction for these k")
    add_out(audit_cmd, "YAML report path, stdout by default")

    metrics_cmd = add_command("metrics", cmd_metrics, "utility measurements")
    add_input(metrics_cmd)
    metrics_cmd.add_argument("--reference", type=Path, help="graph directory the input was derived from")
    metrics_cmd.add_argument("--splits", type=Path, help="splits.yaml of the run producing the input")
    metrics_cmd.add_argument("--sample", type=int, default=0, help="BFS sources for path lengths, 0 for all")
    metrics_cmd.add_argument("--seed", type=int, default=0)
    metrics_cmd.add_argument("--communities", action="store_true", help="score label propagation communities")
    add_out(metrics_cmd, "YAML report path, stdout by default")

    gen_cmd = add_command("gen", cmd_gen, "generate an R-MAT graph with communities")
    gen_cmd.add_argument("--n", type=int)
    gen_cmd.add_argument("--m", type=int)
    gen_cmd.add_argument("--a", type=float, default=RMAT_A)
    gen_cmd.add_argument("--b", type=float, default=RMAT_B)
    gen_cmd.add_argument("--c", type=float, default=RMAT_C)
    gen_cmd.add_argument("--d", type=float, default=RMAT_D)
    gen_cmd.add_argument("--communities", type=int, default=COMMUNITY_COUNT)
    gen_cmd.add_argument("--seed", type=int, default=0)
    add_out(gen_cmd, "output directory")

    export_cmd = add_command("export-ip", cmd_export_ip, "write an integer program in LP format")
    add_input(export_cmd)
    export_cmd.add_argument("--k", type=int)
    export_cmd.add_argument("--model", choices=["add-edge", "full"], default="add-edge")
    export_cmd.add_argument("--omega", type=int, help="split penalty of the full model, |V|^2 by default")
    export_cmd.add_argument("--budget", type=int, help="substitutes per vertex in the full model")
    add_out(export_cmd, "LP file path, stdout by default")

    compare_cmd = add_command("compare", cmd_compare, "sweep algorithms and k")
    add_input(compare_cmd)
    compare_cmd.add_argument("--algs", nargs="+", choices=algorithms, default=["ec", "cbs", "mbs", "fs"])
    compare_cmd.add_argument("--ks", type=int, nargs="+", default=[2, 3, 4])
    compare_cmd.add_argument("--omega", type=int)
    compare_cmd.add_argument("--seed", type=int, default=0)
    compare_cmd.add_argument("--repeats", type=int, default=1, help="runs per (algorithm, k), seeds counting up from --seed")
    compare_cmd.add_argument("--sample", type=int, default=0)
    compare_cmd.add_argument("--no-redirect", action="store_true")
    add_out(compare_cmd, "YAML table path, stdout by default")

    oracle_cmd = add_command("oracle", cmd_oracle, "exact minimum of added edges on a tiny graph")
    add_input(oracle_cmd)
    oracle_cmd.add_argument("--k", type=int)
    oracle_cmd.add_argument("--budget", type=int, default=3, help="largest edge set to try")
    add_out(oracle_cmd, "YAML result path, stdout by default")

    return parser, commands


def parse_args(argv: Sequence[str] | None) -> argparse.Namespace:
    parser, commands = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    if args.config is not None:
        defaults = load_config(args.config)
        if defaults:
            commands[args.command].set_defaults(**defaults)
            args = parser.parse_args(argv)
            configure_logging(args.log_level)
    return args


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = parse_args(argv)
    except UsageError as exc:
        configure_logging(None)
        logger.error(f"Usage error: {exc}")
        return EXIT_USAGE
    except ValueError:
        logger.exception("Invalid configuration")
        return EXIT_USAGE
    return args.handler(args)

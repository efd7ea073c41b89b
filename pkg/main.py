"""Command-line entry point for the copula DAG sampler"""
import argparse
import asyncio
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Optional, Sequence

import pandas as pd
from pydantic import ValidationError

from config import Config
from datasets import ingest, write_replicate
from errors import (
    ConfigError,
    ConstraintViolationError,
    DataValidationError,
    EmptyRecordError,
    GraphFormatError,
    NumericalError,
    SamplerError,
)
from evaluation import auc, confusion_and_rates, roc_band, roc_points, timing_report
from graph import read_constraints, read_graph, write_edge_list, write_graph
from log_utils import setup_logging
from models import ChainRecord, EdgeConstraints, ObservedData, VarClass
from records import MemoryRecordSink, RecordSinkFactory, load_chain_record
from sampler import CopulaDagSampler, dump_state, run_chains
from simulate import replicate_seeds, simulate_scenario
from study import SimulationStudy
from summaries import chain_agreement, mpm_dag, most_probable_dags, running_means, summarize, write_frame, write_summary

logger = logging.getLogger("main")

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2

VALIDATION_ERRORS = (
    ConfigError,
    DataValidationError,
    GraphFormatError,
    ConstraintViolationError,
    ValidationError,
    EmptyRecordError,
    SamplerError,
)

FAILURE_DUMP = "failure_state.json"
RAW_EDGES_FILE = "mpm_raw_edges.txt"


# ---------------------------------------------------------------- simulate

def _simulate_replicate(job):
    index, scenario, out_dir = job
    paths = write_replicate(simulate_scenario(scenario), out_dir)
    return index, paths


def cmd_simulate(args) -> int:
    scenario = _scenario_from_args(args)
    replicates = args.replicates or Config.SIMULATION_REPLICATES
    seed = Config.MCMC_SEED if args.seed is None else args.seed
    out_dir = Path(args.out)
    jobs = [
        (i, scenario.model_copy(update={"replicate_seed": s}), out_dir / f"replicate_{i:03d}")
        for i, s in enumerate(replicate_seeds(seed, replicates), start=1)
    ]
    if Config.WORKERS > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=Config.WORKERS) as pool:
            results = list(pool.map(_simulate_replicate, jobs))
    else:
        results = [_simulate_replicate(job) for job in jobs]
    for index, paths in results:
        print(f"✅ replicate {index:03d}: {paths['data'].parent}")
    return EXIT_OK


# ---------------------------------------------------------------- fit

def _load_records(paths: Sequence[str]) -> List[ChainRecord]:
    records = [load_chain_record(path) for path in paths]
    sizes = sorted({record.q for record in records})
    if len(sizes) > 1:
        listing = ", ".join(f"{path} (q={record.q})" for path, record in zip(paths, records))
        raise ConfigError(f"chain records cover different numbers of nodes: {listing}")
    return records


def _pooled(records: Sequence[ChainRecord]) -> ChainRecord:
    pooled = ChainRecord(q=records[0].q, labels=records[0].labels)
    for record in records:
        pooled.iterations.extend(record.iterations)
        pooled.edges.extend(record.edges)
        pooled.accepted.extend(record.accepted)
        pooled.sigmas.extend(record.sigmas)
    return pooled


def _run_single_chain(data: ObservedData, config, path: Path, record_format: str) -> ChainRecord:
    memory = MemoryRecordSink(data.q, data.labels)
    sink = RecordSinkFactory.create_sink(path, data.q, data.labels, record_format)
    sampler = CopulaDagSampler(data, config, sinks=[memory, sink])
    try:
        sampler.run()
    finally:
        sink.close()
    if sampler.seconds_per_iteration:
        print(f"⏱️  {sampler.seconds_per_iteration:.4f}s per iteration")
    return memory.record


def cmd_fit(args) -> int:
    labels = args.labels.split(",") if args.labels else None
    data = ingest(args.data, args.types, labels)
    if args.constraints:
        constraints = read_constraints(args.constraints, data.q, data.labels)
    else:
        constraints = EdgeConstraints(q=data.q)
    config = Config.mcmc_config(data.q, data.n, constraints, seed=args.seed)
    if config.burnin >= config.iterations:
        raise ConfigError(
            f"burnin={config.burnin} leaves no samples out of {config.iterations} iterations", key="mcmc.burnin"
        )

    out_dir = Path(args.out)
    record_format = args.format or Config.RECORD_FORMAT
    chains = args.chains or Config.MCMC_CHAINS
    if chains == 1:
        records = [_run_single_chain(data, config, out_dir / f"chain.{record_format}", record_format)]
        print(f"✅ Wrote {out_dir / f'chain.{record_format}'}")
    else:
        records = run_chains(data, config, chains, Config.WORKERS)
        for i, record in enumerate(records, start=1):
            path = out_dir / f"chain_{i}.{record_format}"
            with RecordSinkFactory.create_sink(path, data.q, data.labels, record_format) as sink:
                sink.write_record(record)
            print(f"✅ Wrote {path}")
        for i, record in enumerate(records[1:], start=2):
            report = chain_agreement(records[0], record)
            print(
                f"🔁 chain 1 vs {i}: max |Δp| = {report.max_edge_prob_diff:.3f}, "
                f"max |Δcorr| = {report.max_corr_diff:.3f}"
            )

    for i, record in enumerate(records, start=1):
        if record.acceptance_rate is not None:
            print(f"📈 chain {i}: {len(record)} samples, acceptance rate {record.acceptance_rate:.3f}")
    _write_posterior(_pooled(records), out_dir, data.labels, args.threshold)
    return EXIT_OK


# ---------------------------------------------------------------- summarize

def _write_posterior(record: ChainRecord, out_dir: Path, labels: Optional[List[str]], threshold: Optional[float]):
    summary = summarize(record, labels)
    k = Config.THRESHOLD if threshold is None else threshold
    estimate = mpm_dag(summary.edge_prob, k)
    paths = write_summary(summary, out_dir)
    paths.append(write_graph(estimate.dag, out_dir / "mpm_dag.txt", summary.labels))
    paths.append(write_graph(estimate.cpdag, out_dir / "mpm_cpdag.txt", summary.labels))
    if not estimate.is_dag:
        paths.append(write_edge_list(record.q, estimate.raw_edges, out_dir / RAW_EDGES_FILE, summary.labels))

    print(f"\n{'='*60}")
    print(f"📊 Posterior summary: {summary.n_samples} samples, threshold k={k}")
    print(f"{'='*60}")
    print(f"{'Rank':<6} {'Prob':>8} {'Edges':>6}  DAG")
    print("-" * 60)
    for rank, (dag, p) in enumerate(most_probable_dags(record, top=5), start=1):
        edges = " ".join(f"{summary.labels[u]}>{summary.labels[v]}" for u, v in sorted(dag.edges))
        print(f"{rank:<6} {p:>8.4f} {dag.n_edges:>6}  {edges or '(empty)'}")
    print("-" * 60)
    if not estimate.is_dag:
        print(f"⚠️  thresholded graph was not a DAG; dropped {len(estimate.conflicts)} edge(s)")
    print(f"MPM DAG: {estimate.dag.n_edges} edges, CPDAG: {estimate.cpdag.n_edges} adjacencies")
    for path in paths:
        print(f"✅ Wrote {path}")


def cmd_summarize(args) -> int:
    record = _pooled(_load_records(args.records))
    _write_posterior(record, Path(args.out), record.labels or None, args.threshold)
    return EXIT_OK


# ---------------------------------------------------------------- metrics

def cmd_metrics(args) -> int:
    if len(args.edge_prob) != len(args.true_dag):
        raise ConfigError("--edge-prob and --true-dag need the same number of files")
    k = Config.THRESHOLD if args.threshold is None else args.threshold
    mode = args.mode or Config.METRICS_MODE
    thresholds = Config.thresholds()

    rows, tables = [], []
    for run, (prob_path, dag_path) in enumerate(zip(args.edge_prob, args.true_dag), start=1):
        frame = pd.read_csv(prob_path, index_col=0)
        labels = [str(label) for label in frame.index]
        edge_prob = frame.to_numpy(dtype=float)
        truth = read_graph(dag_path, labels)
        estimate = mpm_dag(edge_prob, k)
        metrics = confusion_and_rates(estimate.dag, truth, mode)
        table = roc_points(edge_prob, truth, thresholds, mode)
        tables.append(table.assign(run=run))
        rows.append({"run": run, "edge_prob": str(prob_path), **metrics.model_dump(), "auc": auc(table)})

    frame = pd.DataFrame(rows)
    out_dir = Path(args.out)
    paths = [
        write_frame(frame, out_dir / "metrics.csv"),
        write_frame(pd.concat(tables, ignore_index=True), out_dir / "roc.csv"),
        write_frame(roc_band(tables), out_dir / "roc_band.csv"),
    ]

    print(f"\n{'Run':<5} {'TP':>4} {'FP':>4} {'FN':>4} {'SEN':>7} {'SPE':>7} {'SHD':>5} {'AUC':>7}")
    print("-" * 50)
    for row in rows:
        print(
            f"{row['run']:<5} {row['tp']:>4} {row['fp']:>4} {row['fn']:>4} "
            f"{row['sen']:>7.3f} {row['spe']:>7.3f} {row['shd']:>5} {row['auc']:>7.3f}"
        )
    print("-" * 50)
    print(f"{'mean':<5} {'':>4} {'':>4} {'':>4} {frame['sen'].mean():>7.3f} {frame['spe'].mean():>7.3f} "
          f"{frame['shd'].mean():>5.1f} {frame['auc'].mean():>7.3f}")
    for path in paths:
        print(f"✅ Wrote {path}")
    return EXIT_OK


# ---------------------------------------------------------------- diagnose

def _parse_entry(text: str, q: int):
    try:
        u, v = (int(token) for token in text.split(","))
    except ValueError:
        raise ConfigError(f"entry '{text}' is not of the form u,v", key="--entries") from None
    if not (0 <= u < q and 0 <= v < q):
        raise ConfigError(f"entry '{text}' outside a {q} x {q} matrix", key="--entries")
    return u, v


def cmd_diagnose(args) -> int:
    records = _load_records(args.records)
    q = records[0].q
    if args.entries:
        entries = [_parse_entry(text, q) for text in args.entries]
    else:
        entries = [(u, v) for u in range(q) for v in range(u)]
    out_dir = Path(args.out)
    for i, record in enumerate(records, start=1):
        path = write_frame(running_means(record, entries), out_dir / f"running_means_chain_{i}.csv")
        print(f"✅ Wrote {path}")

    if len(records) > 1:
        rows = []
        for i, record in enumerate(records[1:], start=2):
            report = chain_agreement(records[0], record)
            rows.append({"chain_a": 1, "chain_b": i, **report.model_dump()})
            print(
                f"🔁 chain 1 vs {i}: max |Δp| = {report.max_edge_prob_diff:.3f} "
                f"(mean {report.mean_edge_prob_diff:.3f}), max |Δcorr| = {report.max_corr_diff:.3f} "
                f"(mean {report.mean_corr_diff:.3f})"
            )
        path = write_frame(pd.DataFrame(rows), out_dir / "agreement.csv")
        print(f"✅ Wrote {path}")
    return EXIT_OK


# ---------------------------------------------------------------- bench

def _parse_cell(text: str):
    try:
        q, n = (int(token) for token in text.lower().split("x"))
    except ValueError:
        raise ConfigError(f"cell '{text}' is not of the form QxN") from None
    return q, n


def cmd_bench(args) -> int:
    cells = [_parse_cell(text) for text in args.cells]
    seed = Config.MCMC_SEED if args.seed is None else args.seed
    base = Config.mcmc_config(cells[0][0], cells[0][1])
    report = timing_report(cells, iterations=args.iterations, seed=seed, var_class=VarClass(args.var_class), base_config=base)
    print(report.to_string(index=False))
    if args.out:
        print(f"✅ Wrote {write_frame(report, args.out)}")
    return EXIT_OK


# ---------------------------------------------------------------- study

def cmd_study(args) -> int:
    scenario = _scenario_from_args(args)
    study = SimulationStudy(
        scenario,
        replicates=args.replicates or Config.SIMULATION_REPLICATES,
        seed=Config.MCMC_SEED if args.seed is None else args.seed,
        out_dir=args.out,
        workers=args.workers,
    )
    asyncio.run(study.start())
    return EXIT_OK


# ---------------------------------------------------------------- parser

def _scenario_from_args(args):
    return Config.scenario_config(
        q=args.q,
        n=args.n,
        dag_class=args.dag_class,
        var_class=args.var_class,
        edge_prob=args.edge_prob,
        coef_regime=args.coef_regime,
    )


def _add_scenario_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--q", type=int, help="number of variables")
    parser.add_argument("--n", type=int, help="number of observations")
    parser.add_argument("--dag-class", choices=["free", "regression", "block"])
    parser.add_argument("--var-class", choices=["binary", "ordinal", "count", "mixed"])
    parser.add_argument("--edge-prob", type=float)
    parser.add_argument("--coef-regime", choices=["balanced", "unbalanced"])
    parser.add_argument("--replicates", type=int)
    parser.add_argument("--seed", type=int, help="root seed (default: mcmc.seed)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="copula-dag", description="Bayesian copula DAG structure learning")
    parser.add_argument("--config", help="JSON file merged over config.json")
    parser.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="override one setting, e.g. mcmc.iterations=2000")
    parser.add_argument("--log-level", help="overrides logging.level")
    sub = parser.add_subparsers(dest="command", required=True)

    simulate = sub.add_parser("simulate", help="write simulated replicates")
    _add_scenario_flags(simulate)
    simulate.add_argument("--out", required=True)
    simulate.set_defaults(handler=cmd_simulate)

    fit = sub.add_parser("fit", help="run the sampler on a data CSV")
    fit.add_argument("--data", required=True)
    fit.add_argument("--types", required=True)
    fit.add_argument("--constraints")
    fit.add_argument("--labels", help="comma-separated subset and order of columns")
    fit.add_argument("--chains", type=int)
    fit.add_argument("--seed", type=int)
    fit.add_argument("--format", choices=["csv", "npz"])
    fit.add_argument("--threshold", type=float)
    fit.add_argument("--out", required=True)
    fit.set_defaults(handler=cmd_fit)

    summarize_parser = sub.add_parser("summarize", help="posterior summaries of chain records")
    summarize_parser.add_argument("records", nargs="+")
    summarize_parser.add_argument("--threshold", type=float)
    summarize_parser.add_argument("--out", required=True)
    summarize_parser.set_defaults(handler=cmd_summarize)

    metrics = sub.add_parser("metrics", help="SEN / SPE / SHD and ROC against true DAGs")
    metrics.add_argument("--edge-prob", nargs="+", required=True)
    metrics.add_argument("--true-dag", nargs="+", required=True)
    metrics.add_argument("--threshold", type=float)
    metrics.add_argument("--mode", choices=["skeleton", "directed"])
    metrics.add_argument("--out", required=True)
    metrics.set_defaults(handler=cmd_metrics)

    diagnose = sub.add_parser("diagnose", help="running means and chain agreement")
    diagnose.add_argument("records", nargs="+")
    diagnose.add_argument("--entries", nargs="*", help="correlation entries as u,v (0-based)")
    diagnose.add_argument("--out", required=True)
    diagnose.set_defaults(handler=cmd_diagnose)

    bench = sub.add_parser("bench", help="seconds per iteration over a (q, n) grid")
    bench.add_argument("--cells", nargs="+", default=["10x100"], help="cells as QxN")
    bench.add_argument("--iterations", type=int, default=200)
    bench.add_argument("--seed", type=int)
    bench.add_argument("--var-class", choices=["binary", "ordinal", "count", "mixed"], default="mixed")
    bench.add_argument("--out")
    bench.set_defaults(handler=cmd_bench)

    study = sub.add_parser("study", help="simulate, fit and score every replicate of a scenario")
    _add_scenario_flags(study)
    study.add_argument("--workers", type=int)
    study.add_argument("--out", required=True)
    study.set_defaults(handler=cmd_study)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        Config.load(args.config, args.set)
        setup_logging(level=args.log_level)
        return args.handler(args)
    except NumericalError as exc:
        print(f"❌ numerical failure: {exc}", file=sys.stderr)
        if exc.state is not None:
            path = dump_state(exc.state, Path(getattr(args, "out", None) or ".") / FAILURE_DUMP)
            print(f"💾 chain state written to {path}", file=sys.stderr)
        return EXIT_NUMERICAL
    except VALIDATION_ERRORS as exc:
        print(f"❌ {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())

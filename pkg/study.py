"""Simulation study orchestrator: replicates of simulate -> fit -> summarize -> metrics"""
import asyncio
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from config import Config
from datasets import write_replicate
from evaluation import auc, confusion_and_rates, roc_band, roc_points
from models import McmcConfig, ReplicateResult, ScenarioConfig
from sampler import chain_seeds, run_chain
from simulate import replicate_seeds, simulate_scenario
from summaries import edge_probabilities, mpm_dag

logger = logging.getLogger(__name__)


def run_replicate(job: Dict) -> Dict:
    """Worker body; everything it needs travels in ``job`` so it runs in any process"""
    started = time.perf_counter()
    scenario = simulate_scenario(job["scenario"])
    config: McmcConfig = job["mcmc"].model_copy(update={"constraints": scenario.constraints})
    if job.get("out_dir"):
        write_replicate(scenario, job["out_dir"])
    record = run_chain(scenario.data, config)
    edge_prob = edge_probabilities(record)
    estimate = mpm_dag(edge_prob, job["threshold"])
    metrics = confusion_and_rates(estimate.dag, scenario.dag, job["mode"])
    roc = roc_points(edge_prob, scenario.dag, job["thresholds"], job["mode"])
    result = ReplicateResult(
        index=job["index"],
        seed=job["scenario"].replicate_seed,
        n_true_edges=scenario.dag.n_edges,
        n_estimated_edges=estimate.dag.n_edges,
        metrics=metrics,
        auc=auc(roc),
        acceptance_rate=record.acceptance_rate,
        seconds=time.perf_counter() - started,
    )
    return {"result": result, "roc": roc}


class SimulationStudy:
    """Runs the replicates of one scenario and keeps their metrics and ROC curves"""

    def __init__(
        self,
        scenario: ScenarioConfig,
        replicates: int,
        seed: int,
        out_dir: Optional[str] = None,
        workers: Optional[int] = None,
        mcmc: Optional[McmcConfig] = None,
    ):
        if replicates < 1:
            raise ValueError("a study needs at least one replicate")
        self.scenario = scenario
        self.replicates = replicates
        self.seed = seed
        self.out_dir = Path(out_dir) if out_dir else None
        self.workers = workers or Config.WORKERS
        self.mcmc = mcmc or Config.mcmc_config(scenario.q, scenario.n)
        self.threshold = Config.THRESHOLD
        self.thresholds = Config.thresholds()
        self.mode = Config.METRICS_MODE
        self.state_file = (self.out_dir or Path(".")) / "study_state.json"
        self.results: List[ReplicateResult] = []
        self.roc_tables: List[pd.DataFrame] = []

    def jobs(self) -> List[Dict]:
        jobs = []
        for index, seed in enumerate(replicate_seeds(self.seed, self.replicates), start=1):
            jobs.append({
                "index": index,
                "scenario": self.scenario.model_copy(update={"replicate_seed": seed}),
                "mcmc": self.mcmc.model_copy(update={"seed": chain_seeds(seed, 1)[0]}),
                "threshold": self.threshold,
                "thresholds": self.thresholds,
                "mode": self.mode,
                "out_dir": str(self.out_dir / f"replicate_{index:03d}") if self.out_dir else None,
            })
        return jobs

    async def start(self) -> List[ReplicateResult]:
        """Run every replicate, in a process pool when more than one worker is configured"""
        jobs = self.jobs()
        print(f"\n{'='*60}")
        print(
            f"🔬 Simulation study: {self.scenario.dag_class.value} / {self.scenario.var_class.value}, "
            f"q={self.scenario.q}, n={self.scenario.n}, {self.replicates} replicates, {self.workers} worker(s)"
        )
        print(f"{'='*60}")

        if self.workers > 1:
            loop = asyncio.get_running_loop()
            with ProcessPoolExecutor(max_workers=self.workers) as pool:
                outcomes = await asyncio.gather(
                    *[loop.run_in_executor(pool, run_replicate, job) for job in jobs]
                )
        else:
            outcomes = []
            for job in jobs:
                outcomes.append(run_replicate(job))
                logger.info("replicate %d/%d done", job["index"], len(jobs))

        self.results = [outcome["result"] for outcome in outcomes]
        self.roc_tables = [outcome["roc"] for outcome in outcomes]
        self.save_state()
        if self.out_dir:
            self.write_outputs()
        self.print_table()
        return self.results

    def band(self) -> pd.DataFrame:
        return roc_band(self.roc_tables)

    def metrics_frame(self) -> pd.DataFrame:
        rows = []
        for result in self.results:
            row = {"replicate": result.index, "seed": result.seed, "true_edges": result.n_true_edges,
                   "estimated_edges": result.n_estimated_edges, "auc": result.auc,
                   "acceptance_rate": result.acceptance_rate, "seconds": result.seconds}
            row.update(result.metrics.model_dump())
            rows.append(row)
        return pd.DataFrame(rows)

    def write_outputs(self) -> List[Path]:
        self.out_dir.mkdir(parents=True, exist_ok=True)
        metrics_path = self.out_dir / "metrics.csv"
        band_path = self.out_dir / "roc_band.csv"
        self.metrics_frame().to_csv(metrics_path, index=False)
        self.band().to_csv(band_path, index=False)
        print(f"✅ Wrote {metrics_path} and {band_path}")
        return [metrics_path, band_path]

    def summary_line(self) -> Dict[str, float]:
        return {
            "sen": float(np.mean([r.metrics.sen for r in self.results])),
            "spe": float(np.mean([r.metrics.spe for r in self.results])),
            "shd": float(np.mean([r.metrics.shd for r in self.results])),
            "shd_ratio": float(np.mean([r.metrics.shd_ratio for r in self.results])),
            "auc": float(np.mean([r.auc for r in self.results])),
        }

    def print_table(self):
        """Per-replicate metrics plus the mean line"""
        print(f"\n{'Rep':<5} {'Seed':<22} {'True':>5} {'Est':>5} {'SEN':>7} {'SPE':>7} {'SHD':>5} {'AUC':>7} {'Acc':>7}")
        print("-" * 80)
        for r in self.results:
            acceptance = f"{r.acceptance_rate:.3f}" if r.acceptance_rate is not None else "  -  "
            print(
                f"{r.index:<5} {r.seed:<22} {r.n_true_edges:>5} {r.n_estimated_edges:>5} "
                f"{r.metrics.sen:>7.3f} {r.metrics.spe:>7.3f} {r.metrics.shd:>5} {r.auc:>7.3f} {acceptance:>7}"
            )
        mean = self.summary_line()
        print("-" * 80)
        print(
            f"{'mean':<5} {'':<22} {'':>5} {'':>5} {mean['sen']:>7.3f} {mean['spe']:>7.3f} "
            f"{mean['shd']:>5.1f} {mean['auc']:>7.3f}"
        )
        print("=" * 80)

    def save_state(self):
        """Save study progress and results to study_state.json"""
        try:
            state = {
                "timestamp": datetime.now().isoformat(),
                "scenario": self.scenario.model_dump(mode="json"),
                "replicates": self.replicates,
                "seed": self.seed,
                "mcmc": {
                    "iterations": self.mcmc.iterations,
                    "burnin": self.mcmc.burnin,
                    "thin": self.mcmc.thin,
                },
                "threshold": self.threshold,
                "mode": self.mode,
                "results": [r.model_dump(mode="json") for r in self.results],
                "mean": self.summary_line() if self.results else {},
            }
            self.state_file.parent.mkdir(parents=True, exist_ok=True)
            with open(self.state_file, "w") as f:
                json.dump(state, f, indent=2)
        except OSError as e:
            logger.warning("could not save study state: %s", e)

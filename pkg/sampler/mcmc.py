"""Chain orchestrator: initialization, sweeps, thinning, record sinks and failure dumps"""
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Callable, List, Optional, Sequence

import numpy as np

from copula import column_ranks, init_latent
from errors import NumericalError
from gaussian_dag import posterior_suffstat, sample_params_prior, sigma_from_params
from graph import random_constrained_dag
from models import ChainRecord, ChainSample, ChainState, Dag, McmcConfig, ObservedData
from records import BaseRecordSink, MemoryRecordSink
from .steps import conjugate_param_step, latent_step, mh_dag_step

logger = logging.getLogger(__name__)

SampleCallback = Callable[[ChainSample], None]


class CopulaDagSampler:
    """
    Metropolis-within-Gibbs sampler over (DAG, D, L, Z).

    Each iteration draws (D, L) given the DAG and Z, makes
    ``moves_per_sweep`` DAG proposals, then refreshes Z within A(X).
    """

    def __init__(
        self,
        data: ObservedData,
        config: McmcConfig,
        sinks: Sequence[BaseRecordSink] = (),
        callbacks: Sequence[SampleCallback] = (),
        rng: Optional[np.random.Generator] = None,
    ):
        if data.q != config.q:
            raise ValueError(f"data has {data.q} columns but the prior covers {config.q} nodes")
        self.data = data
        self.config = config
        self.sinks = list(sinks)
        self.callbacks = list(callbacks)
        self.rng = rng if rng is not None else np.random.default_rng(config.seed)
        self.ranks = column_ranks(data)
        self.n_accepted = 0
        self.elapsed = 0.0

    def initial_state(self) -> ChainState:
        """Empty (or random) DAG, prior parameters on it, mid-rank latent data"""
        config = self.config
        if config.init == "random":
            dag = random_constrained_dag(config.q, config.constraints, config.init_edge_prob, self.rng)
        else:
            dag = Dag.empty(config.q)
        params = sample_params_prior(dag, config.wishart, self.rng)
        Z = init_latent(self.data)
        return ChainState(
            dag=dag,
            params=params,
            Z=Z,
            u_tilde=posterior_suffstat(config.wishart, Z),
        )

    def step(self, state: ChainState) -> ChainState:
        """One full sweep: params, DAG move(s), latent data"""
        state = conjugate_param_step(state, self.config, self.rng)
        accepted = False
        for _ in range(self.config.moves_per_sweep):
            state = mh_dag_step(state, self.config, self.rng)
            accepted = accepted or state.accepted
        if self.config.update_latent:
            state = latent_step(state, self.data, self.config, self.rng, self.ranks)
        return state.model_copy(update={"iteration": state.iteration + 1, "accepted": accepted})

    def _emit(self, state: ChainState):
        sample = ChainSample(
            iteration=state.iteration,
            edges=tuple(sorted(state.dag.edges)),
            accepted=state.accepted,
            sigma=sigma_from_params(state.params),
        )
        for sink in self.sinks:
            sink.write(sample)
        for callback in self.callbacks:
            callback(sample)

    def run(self, state: Optional[ChainState] = None) -> ChainState:
        """Run ``config.iterations`` sweeps; returns the final state"""
        config = self.config
        if state is None:
            state = self.initial_state()
        report_every = max(1, config.iterations // 10)
        start = time.perf_counter()
        logger.info(
            "chain start: q=%d n=%d iterations=%d burnin=%d thin=%d seed=%d",
            config.q, self.data.n, config.iterations, config.burnin, config.thin, config.seed,
        )
        while state.iteration < config.iterations:
            try:
                state = self.step(state)
            except NumericalError as exc:
                state.rng_state = self.rng.bit_generator.state
                exc.state = state
                logger.error("numerical failure at iteration %d: %s", state.iteration + 1, exc)
                raise
            self.n_accepted += int(state.accepted)
            if config.is_recorded(state.iteration):
                self._emit(state)
            if state.iteration % report_every == 0:
                logger.info(
                    "iteration %d/%d: %d edges, acceptance rate %.3f",
                    state.iteration, config.iterations, state.dag.n_edges,
                    self.n_accepted / state.iteration,
                )
        self.elapsed = time.perf_counter() - start
        logger.info("chain done in %.1fs", self.elapsed)
        return state

    @property
    def seconds_per_iteration(self) -> Optional[float]:
        if not self.config.iterations:
            return None
        return self.elapsed / self.config.iterations


def run_chain(
    data: ObservedData,
    config: McmcConfig,
    sinks: Sequence[BaseRecordSink] = (),
    callbacks: Sequence[SampleCallback] = (),
) -> ChainRecord:
    """Run one chain and return its in-memory record (extra sinks receive the same samples)"""
    memory = MemoryRecordSink(config.q, data.labels)
    sampler = CopulaDagSampler(data, config, sinks=[memory, *sinks], callbacks=callbacks)
    sampler.run()
    for sink in sinks:
        sink.close()
    return memory.record


def chain_seeds(seed: int, n_chains: int) -> List[int]:
    """Independent per-chain seeds spawned from one SeedSequence"""
    return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in np.random.SeedSequence(seed).spawn(n_chains)]


def _run_chain_worker(args) -> ChainRecord:
    data, config = args
    return run_chain(data, config)


def run_chains(data: ObservedData, config: McmcConfig, n_chains: int, workers: int = 1) -> List[ChainRecord]:
    """Independent chains sharing only the data; parallel in a process pool when workers > 1"""
    configs = [config.model_copy(update={"seed": seed}) for seed in chain_seeds(config.seed, n_chains)]
    if workers <= 1 or n_chains == 1:
        return [run_chain(data, chain_config) for chain_config in configs]
    with ProcessPoolExecutor(max_workers=min(workers, n_chains)) as pool:
        return list(pool.map(_run_chain_worker, [(data, chain_config) for chain_config in configs]))


def dump_state(state: ChainState, path) -> Path:
    """Write the state as JSON (iteration, edges, D, L, rng state) plus Z as .npy next to it"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    z_path = path.with_suffix(".Z.npy")
    np.save(z_path, state.Z)
    payload = {
        "iteration": state.iteration,
        "edges": [list(edge) for edge in sorted(state.dag.edges)],
        "q": state.dag.q,
        "D": state.params.D.tolist(),
        "L": state.params.L.tolist(),
        "rng_state": state.rng_state,
        "Z_file": z_path.name,
    }
    with open(path, "w") as f:
        json.dump(payload, f, indent=2, default=str)
    return path

"""Simulation scenarios: constrained random DAGs, SEM parameters and latent data"""
import logging
from typing import List

import numpy as np

from gaussian_dag import sigma_from_params
from graph import random_constrained_dag, topological_order
from models import (
    CholeskyParams,
    CoefRegime,
    Dag,
    DagClass,
    EdgeConstraints,
    ScenarioConfig,
    SimulatedScenario,
)
from .marginals import transform_marginals

logger = logging.getLogger(__name__)


def block_partition(q: int):
    """A = first ceil(q/2) nodes, B = the rest"""
    half = (q + 1) // 2
    return list(range(half)), list(range(half, q))


def scenario_constraints(config: ScenarioConfig) -> EdgeConstraints:
    q = config.q
    if config.dag_class == DagClass.REGRESSION:
        bad = [u for u in config.responses if not 0 <= u < q]
        if bad:
            raise ValueError(f"response nodes {bad} outside 0..{q - 1}")
        return EdgeConstraints.regression(q, config.responses)
    if config.dag_class == DagClass.BLOCK:
        block_a, block_b = block_partition(q)
        return EdgeConstraints.block(q, block_a, block_b)
    return EdgeConstraints(q=q)


def class_order(config: ScenarioConfig, rng: np.random.Generator) -> List[int]:
    """Random topological order in which every pair allowed by the class can receive an edge"""
    q = config.q
    if config.dag_class == DagClass.REGRESSION:
        responses = sorted(set(config.responses))
        others = [v for v in range(q) if v not in responses]
        return [int(v) for v in rng.permutation(others)] + [int(v) for v in rng.permutation(responses)]
    if config.dag_class == DagClass.BLOCK:
        block_a, block_b = block_partition(q)
        return [int(v) for v in rng.permutation(block_a)] + [int(v) for v in rng.permutation(block_b)]
    return [int(v) for v in rng.permutation(q)]


def random_dag(config: ScenarioConfig, rng: np.random.Generator) -> Dag:
    """Every allowed pair below a class-compatible random order gets an edge with probability edge_prob"""
    order = class_order(config, rng)
    return random_constrained_dag(config.q, scenario_constraints(config), config.edge_prob, rng, order=order)


def random_sem_params(dag: Dag, regime: CoefRegime, rng: np.random.Generator) -> CholeskyParams:
    """D = I; nonzero L entries uniform on [0.1, 1] in magnitude, random sign when balanced"""
    L = np.eye(dag.q)
    for u, v in sorted(dag.edges):
        magnitude = rng.uniform(0.1, 1.0)
        if regime == CoefRegime.BALANCED:
            magnitude *= 1.0 if rng.random() < 0.5 else -1.0
        L[u, v] = magnitude
    return CholeskyParams(D=np.ones(dag.q), L=L)


def generate_latent(dag: Dag, params: CholeskyParams, n: int, rng: np.random.Generator) -> np.ndarray:
    """Rows i.i.d. from the SEM z_j = -L[pa, j]^T z_pa + eps_j, eps_j ~ N(0, D_jj), in topological order"""
    noise = rng.standard_normal((n, dag.q)) * np.sqrt(params.D)
    Z = np.zeros((n, dag.q))
    parent_sets = dag.parent_sets
    for j in topological_order(dag):
        pa = list(parent_sets[j])
        Z[:, j] = noise[:, j]
        if pa:
            Z[:, j] -= Z[:, pa] @ params.L[pa, j]
    return Z


def replicate_seeds(seed: int, replicates: int) -> List[int]:
    return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in np.random.SeedSequence(seed).spawn(replicates)]


def simulate_scenario(config: ScenarioConfig) -> SimulatedScenario:
    """
    One replicate: DAG, parameters, latent data and observed data.

    Separate streams spawned from ``replicate_seed`` drive the DAG, the
    parameters, the latent rows and the marginals, so the DAG of a seed
    does not depend on n.
    """
    dag_rng, param_rng, latent_rng, marginal_rng = (
        np.random.default_rng(child) for child in np.random.SeedSequence(config.replicate_seed).spawn(4)
    )
    constraints = scenario_constraints(config)
    dag = random_dag(config, dag_rng)
    params = random_sem_params(dag, config.coef_regime, param_rng)
    Z = generate_latent(dag, params, config.n, latent_rng)
    # unit-variance latent columns so every X_j has exactly its stated marginal
    scale = np.sqrt(np.diag(sigma_from_params(params)))
    data = transform_marginals(Z / scale, config.var_class, marginal_rng)
    logger.debug(
        "scenario %s/%s q=%d n=%d seed=%d: %d true edges",
        config.dag_class.value, config.var_class.value, config.q, config.n, config.replicate_seed, dag.n_edges,
    )
    return SimulatedScenario(config=config, dag=dag, constraints=constraints, params=params, Z=Z, data=data)

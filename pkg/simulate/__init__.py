"""Simulation scenarios for structure-recovery studies"""
from .marginals import column_families, draw_marginal, marginal_quantile, mixed_split, transform_marginals
from .scenarios import (
    block_partition,
    class_order,
    generate_latent,
    random_dag,
    random_sem_params,
    replicate_seeds,
    scenario_constraints,
    simulate_scenario,
)

__all__ = [
    "column_families",
    "draw_marginal",
    "marginal_quantile",
    "mixed_split",
    "transform_marginals",
    "block_partition",
    "class_order",
    "generate_latent",
    "random_dag",
    "random_sem_params",
    "replicate_seeds",
    "scenario_constraints",
    "simulate_scenario",
]

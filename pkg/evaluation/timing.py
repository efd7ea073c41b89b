"""Per-iteration running time of short calibration chains over a (q, n) grid"""
import logging
from typing import Iterable, Optional, Tuple

import pandas as pd

from models import DagWishartHyper, McmcConfig, ScenarioConfig, VarClass
from sampler import CopulaDagSampler
from simulate import simulate_scenario

logger = logging.getLogger(__name__)

TIMING_COLUMNS = ["q", "n", "iterations", "seconds", "seconds_per_iteration"]


def timing_report(
    cells: Iterable[Tuple[int, int]],
    iterations: int = 200,
    seed: int = 0,
    var_class: VarClass = VarClass.MIXED,
    base_config: Optional[McmcConfig] = None,
) -> pd.DataFrame:
    """One row per (q, n) cell; chains run on freshly simulated free-class data"""
    rows = []
    for q, n in cells:
        scenario = simulate_scenario(ScenarioConfig(q=q, n=n, var_class=var_class, replicate_seed=seed))
        overrides = {
            "iterations": iterations,
            "burnin": 0,
            "thin": 1,
            "seed": seed,
            "wishart": DagWishartHyper.default(q, n),
            "constraints": scenario.constraints,
        }
        if base_config is not None:
            config = base_config.model_copy(update=overrides)
        else:
            config = McmcConfig(**overrides)
        sampler = CopulaDagSampler(scenario.data, config)
        sampler.run()
        logger.info("timing q=%d n=%d: %.4fs per iteration", q, n, sampler.seconds_per_iteration)
        rows.append([q, n, iterations, sampler.elapsed, sampler.seconds_per_iteration])
    return pd.DataFrame(rows, columns=TIMING_COLUMNS)

"""
Configuration module for the copula DAG sampler
Reads from config.json, merges an optional user file and command-line
overrides, and optionally .env for the worker count
"""
import copy
import json
import os
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional

from dotenv import load_dotenv

from errors import ConfigError

# Load environment variables (COPULA_DAG_WORKERS)
load_dotenv()

WORKERS_ENV_VAR = "COPULA_DAG_WORKERS"


def _merge(base: Dict[str, Any], update: Dict[str, Any]) -> Dict[str, Any]:
    """Recursively merge ``update`` into a copy of ``base``"""
    merged = copy.deepcopy(base)
    for key, value in update.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def parse_override(item: str) -> Dict[str, Any]:
    """Turn ``section.key=value`` into a nested dict; the value is parsed as JSON when possible"""
    if "=" not in item:
        raise ConfigError(f"override '{item}' is not of the form section.key=value")
    dotted, raw = item.split("=", 1)
    keys = [k for k in dotted.strip().split(".") if k]
    if not keys:
        raise ConfigError(f"override '{item}' has an empty key")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    nested: Dict[str, Any] = {keys[-1]: value}
    for key in reversed(keys[:-1]):
        nested = {key: nested}
    return nested


class _ConfigMeta(type):
    """Class-level read-only accessors (``Config.MCMC_ITERATIONS`` and friends)"""

    # Prior hyperparameters
    @property
    def PRIOR_G(cls) -> Optional[float]:
        value = cls._get("prior", "g")
        return None if value is None else float(value)

    @property
    def PRIOR_A(cls) -> Optional[float]:
        value = cls._get("prior", "a")
        return None if value is None else float(value)

    @property
    def PRIOR_C(cls) -> float:
        return float(cls._get("prior", "c", default=1.0))

    @property
    def PRIOR_D(cls) -> float:
        return float(cls._get("prior", "d", default=5.0))

    # MCMC
    @property
    def MCMC_ITERATIONS(cls) -> int:
        return int(cls._get("mcmc", "iterations", default=15000))

    @property
    def MCMC_BURNIN(cls) -> int:
        return int(cls._get("mcmc", "burnin", default=5000))

    @property
    def MCMC_THIN(cls) -> int:
        return int(cls._get("mcmc", "thin", default=1))

    @property
    def MCMC_SEED(cls) -> int:
        return int(cls._get("mcmc", "seed", default=0))

    @property
    def MCMC_MOVES_PER_SWEEP(cls) -> int:
        return int(cls._get("mcmc", "moves_per_sweep", default=1))

    @property
    def MCMC_INIT(cls) -> str:
        return str(cls._get("mcmc", "init", default="empty"))

    @property
    def MCMC_INIT_EDGE_PROB(cls) -> float:
        return float(cls._get("mcmc", "init_edge_prob", default=0.1))

    @property
    def MCMC_LATENT_UPDATE(cls) -> str:
        return str(cls._get("mcmc", "latent_update", default="blocked"))

    @property
    def MCMC_UPDATE_LATENT(cls) -> bool:
        return bool(cls._get("mcmc", "update_latent", default=True))

    @property
    def MCMC_RESAMPLE_AFTER_ACCEPT(cls) -> bool:
        return bool(cls._get("mcmc", "resample_after_accept", default=True))

    @property
    def RECORD_FORMAT(cls) -> str:
        return str(cls._get("mcmc", "record_format", default="csv"))

    @property
    def MCMC_CHAINS(cls) -> int:
        return int(cls._get("mcmc", "chains", default=1))

    # Summaries
    @property
    def THRESHOLD(cls) -> float:
        return float(cls._get("summaries", "threshold", default=0.5))

    @property
    def ROC_GRID_SIZE(cls) -> int:
        return int(cls._get("summaries", "roc_grid_size", default=101))

    @property
    def METRICS_MODE(cls) -> str:
        return str(cls._get("summaries", "mode", default="skeleton"))

    # Simulation
    @property
    def SIMULATION(cls) -> Dict[str, Any]:
        return dict(cls._get("simulation", default={}))

    @property
    def SIMULATION_REPLICATES(cls) -> int:
        return int(cls._get("simulation", "replicates", default=40))

    # Workers
    @property
    def WORKERS(cls) -> int:
        env_value = os.getenv(WORKERS_ENV_VAR, "")
        if env_value:
            return int(env_value)
        return int(cls._get("workers", "count", default=1))

    # Logging
    @property
    def LOG_LEVEL(cls) -> str:
        return cls._get("logging", "level", default="INFO")

    @property
    def LOG_FILE(cls) -> str:
        return cls._get("logging", "file", default="")


class Config(metaclass=_ConfigMeta):
    """Main configuration class - reads from config.json"""

    _config_data: Dict[str, Any] = {}
    _config_file = Path(__file__).resolve().parent / "config.json"

    @classmethod
    def _load_config(cls):
        """Load the packaged defaults from config.json"""
        config_path = Path(cls._config_file)
        if not config_path.exists():
            raise FileNotFoundError(f"{config_path} not found")
        with open(config_path, "r") as f:
            cls._config_data = json.load(f)

    @classmethod
    def _get(cls, *keys, default=None):
        """Get nested config value"""
        if not cls._config_data:
            cls._load_config()

        value = cls._config_data
        for key in keys:
            if isinstance(value, dict):
                value = value.get(key, default)
            else:
                return default
        return value if value is not None else default

    @classmethod
    def load(cls, path: Optional[str] = None, overrides: Optional[Iterable[str]] = None):
        """Reload defaults, then merge a user config file and ``section.key=value`` overrides"""
        cls.reload()
        data = cls._config_data
        if path:
            user_path = Path(path)
            if not user_path.exists():
                raise ConfigError(f"config file {user_path} not found")
            try:
                with open(user_path, "r") as f:
                    data = _merge(data, json.load(f))
            except json.JSONDecodeError as e:
                raise ConfigError(f"config file {user_path} is not valid JSON: {e}")
        for item in overrides or []:
            data = _merge(data, parse_override(item))
        cls._config_data = data
        cls.validate()

    @classmethod
    def as_dict(cls) -> Dict[str, Any]:
        """Copy of the effective configuration"""
        if not cls._config_data:
            cls._load_config()
        return copy.deepcopy(cls._config_data)

    @classmethod
    def wishart_hyper(cls, q: int, n: int):
        """DAG-Wishart hyperparameters: U = g I with g = 1/n and a = q unless configured"""
        from models import DagWishartHyper

        return DagWishartHyper.default(q=q, n=n, g=cls.PRIOR_G, a=cls.PRIOR_A)

    @classmethod
    def graph_hyper(cls):
        """Beta(c, d) hyperparameters of the skeleton prior"""
        from models import GraphPriorHyper

        return GraphPriorHyper(c=cls.PRIOR_C, d=cls.PRIOR_D)

    @classmethod
    def mcmc_config(cls, q: int, n: int, constraints=None, seed: Optional[int] = None):
        """Build the validated McmcConfig for a dataset with q columns and n rows"""
        from models import EdgeConstraints, McmcConfig

        return McmcConfig(
            iterations=cls.MCMC_ITERATIONS,
            burnin=cls.MCMC_BURNIN,
            thin=cls.MCMC_THIN,
            seed=cls.MCMC_SEED if seed is None else seed,
            moves_per_sweep=cls.MCMC_MOVES_PER_SWEEP,
            init=cls.MCMC_INIT,
            init_edge_prob=cls.MCMC_INIT_EDGE_PROB,
            latent_update=cls.MCMC_LATENT_UPDATE,
            update_latent=cls.MCMC_UPDATE_LATENT,
            resample_after_accept=cls.MCMC_RESAMPLE_AFTER_ACCEPT,
            wishart=cls.wishart_hyper(q, n),
            graph_prior=cls.graph_hyper(),
            constraints=constraints if constraints is not None else EdgeConstraints(q=q),
        )

    @classmethod
    def scenario_config(cls, **overrides):
        """ScenarioConfig from the simulation section; keyword overrides win"""
        from models import ScenarioConfig

        settings = {k: v for k, v in cls.SIMULATION.items() if k != "replicates"}
        settings.update({k: v for k, v in overrides.items() if v is not None})
        return ScenarioConfig(**settings)

    @classmethod
    def thresholds(cls) -> List[float]:
        """ROC threshold grid: roc_grid_size equally spaced values in [0, 1]"""
        size = cls.ROC_GRID_SIZE
        return [i / (size - 1) for i in range(size)]

    @classmethod
    def validate(cls):
        """Validate configuration"""
        if cls.MCMC_ITERATIONS < 0:
            raise ConfigError("must be non-negative", key="mcmc.iterations")
        if cls.MCMC_BURNIN < 0:
            raise ConfigError("must be non-negative", key="mcmc.burnin")
        if cls.MCMC_THIN < 1:
            raise ConfigError("must be at least 1", key="mcmc.thin")
        if cls.MCMC_MOVES_PER_SWEEP < 1:
            raise ConfigError("must be at least 1", key="mcmc.moves_per_sweep")
        if cls.MCMC_INIT not in ("empty", "random"):
            raise ConfigError("must be 'empty' or 'random'", key="mcmc.init")
        for key in ("update_latent", "resample_after_accept"):
            if not isinstance(cls._get("mcmc", key, default=True), bool):
                raise ConfigError("must be true or false", key=f"mcmc.{key}")
        if cls.MCMC_LATENT_UPDATE not in ("blocked", "serial"):
            raise ConfigError("must be 'blocked' or 'serial'", key="mcmc.latent_update")
        if cls.RECORD_FORMAT not in ("csv", "npz"):
            raise ConfigError("must be 'csv' or 'npz'", key="mcmc.record_format")
        if cls.PRIOR_C <= 0 or cls.PRIOR_D <= 0:
            raise ConfigError("c and d must be positive", key="prior")
        if cls.PRIOR_G is not None and cls.PRIOR_G <= 0:
            raise ConfigError("must be positive", key="prior.g")
        if not 0.0 < cls.THRESHOLD < 1.0:
            raise ConfigError("must lie in (0, 1)", key="summaries.threshold")
        if cls.ROC_GRID_SIZE < 2:
            raise ConfigError("must be at least 2", key="summaries.roc_grid_size")
        if cls.METRICS_MODE not in ("skeleton", "directed"):
            raise ConfigError("must be 'skeleton' or 'directed'", key="summaries.mode")
        if cls.WORKERS < 1:
            raise ConfigError("must be at least 1", key="workers.count")

    @classmethod
    def reload(cls):
        """Reload configuration from file"""
        cls._config_data = {}
        cls._load_config()

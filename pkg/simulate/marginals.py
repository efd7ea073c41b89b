"""Marginal transforms X_j = F_j^-1(Phi(Z_j)) for the simulated variable classes"""
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import stats
from scipy.special import ndtr

from models import ObservedData, VarClass, VariableType

# (binary, ordinal, count) column counts of the reference 20-variable design
MIXED_REFERENCE = (7, 8, 5)
BINOMIAL_TRIALS = 5


def mixed_split(q: int) -> Tuple[int, int, int]:
    """Binary / ordinal / count column counts, proportional to 7/8/5 with every type present"""
    if q < 3:
        raise ValueError(f"mixed data needs at least 3 variables, got {q}")
    total = sum(MIXED_REFERENCE)
    n_binary = max(1, round(MIXED_REFERENCE[0] * q / total))
    n_ordinal = max(1, round(MIXED_REFERENCE[1] * q / total))
    while q - n_binary - n_ordinal < 1:
        if n_ordinal >= n_binary:
            n_ordinal -= 1
        else:
            n_binary -= 1
    return n_binary, n_ordinal, q - n_binary - n_ordinal


def column_families(q: int, var_class: VarClass) -> List[VariableType]:
    if var_class == VarClass.MIXED:
        n_binary, n_ordinal, n_count = mixed_split(q)
        return (
            [VariableType.BINARY] * n_binary
            + [VariableType.ORDINAL] * n_ordinal
            + [VariableType.COUNT] * n_count
        )
    family = {
        VarClass.BINARY: VariableType.BINARY,
        VarClass.ORDINAL: VariableType.ORDINAL,
        VarClass.COUNT: VariableType.COUNT,
    }[var_class]
    return [family] * q


def draw_marginal(var_type: VariableType, rng: np.random.Generator) -> Dict[str, Any]:
    if var_type == VariableType.BINARY:
        return {"family": "bernoulli", "eta": float(rng.uniform(0.2, 0.8))}
    if var_type == VariableType.ORDINAL:
        return {"family": "binomial", "trials": BINOMIAL_TRIALS, "theta": float(rng.uniform(0.2, 0.8))}
    if var_type == VariableType.COUNT:
        return {"family": "poisson", "lambda": float(rng.uniform(1.0, 10.0))}
    raise ValueError(f"no simulated marginal for {var_type.value} variables")


def marginal_quantile(u: np.ndarray, marginal: Dict[str, Any]) -> np.ndarray:
    """F^-1(u), floored at zero"""
    u = np.clip(u, 0.0, np.nextafter(1.0, 0.0))
    family = marginal["family"]
    if family == "bernoulli":
        x = stats.bernoulli.ppf(u, marginal["eta"])
    elif family == "binomial":
        x = stats.binom.ppf(u, marginal["trials"], marginal["theta"])
    elif family == "poisson":
        x = stats.poisson.ppf(u, marginal["lambda"])
    else:
        raise ValueError(f"unknown marginal family '{family}'")
    return np.maximum(x, 0.0)


def transform_marginals(
    Z: np.ndarray,
    var_class: VarClass,
    rng: np.random.Generator,
    labels: Optional[Sequence[str]] = None,
) -> ObservedData:
    """Push standard-normal latent columns through Phi and the drawn quantile functions"""
    Z = np.asarray(Z, dtype=float)
    families = column_families(Z.shape[1], var_class)
    marginals = [draw_marginal(family, rng) for family in families]
    U = ndtr(Z)
    X = np.column_stack([marginal_quantile(U[:, j], marginals[j]) for j in range(Z.shape[1])])
    return ObservedData(
        X=X,
        var_types=families,
        labels=list(labels) if labels else [],
        marginal_params=marginals,
    )

"""Writing observed data, types files and simulated replicates"""
import json
from pathlib import Path
from typing import Dict

import numpy as np
import pandas as pd

from graph import write_constraints, write_graph
from models import ObservedData, SimulatedScenario, VariableType

DATA_FILE = "data.csv"
TYPES_FILE = "types.csv"
TRUE_DAG_FILE = "true_dag.txt"
CONSTRAINTS_FILE = "constraints.txt"
METADATA_FILE = "metadata.json"


def write_data(data: ObservedData, path) -> Path:
    """Discrete columns are written as integers"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    columns = {}
    for j, label in enumerate(data.labels):
        column = data.X[:, j]
        if data.var_types[j] != VariableType.CONTINUOUS and np.all(column == np.round(column)):
            column = column.astype(np.int64)
        columns[label] = column
    pd.DataFrame(columns, columns=data.labels).to_csv(path, index=False)
    return path


def write_types(data: ObservedData, path) -> Path:
    path = Path(path)
    pd.DataFrame({"column": data.labels, "type": [t.value for t in data.var_types]}).to_csv(path, index=False)
    return path


def write_replicate(scenario: SimulatedScenario, out_dir) -> Dict[str, Path]:
    """data.csv, types.csv, true_dag.txt, constraints.txt and metadata.json in ``out_dir``"""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    labels = scenario.data.labels
    paths = {
        "data": write_data(scenario.data, out_dir / DATA_FILE),
        "types": write_types(scenario.data, out_dir / TYPES_FILE),
        "true_dag": out_dir / TRUE_DAG_FILE,
        "constraints": out_dir / CONSTRAINTS_FILE,
        "metadata": out_dir / METADATA_FILE,
    }
    write_graph(scenario.dag, paths["true_dag"], labels)
    write_constraints(scenario.constraints, paths["constraints"], labels)
    metadata = {
        "scenario": scenario.config.model_dump(mode="json"),
        "labels": labels,
        "var_types": [t.value for t in scenario.data.var_types],
        "marginals": scenario.data.marginal_params,
        "true_edges": [[u, v] for u, v in sorted(scenario.dag.edges)],
        "D": scenario.params.D.tolist(),
        "L": scenario.params.L.tolist(),
    }
    with open(paths["metadata"], "w") as f:
        json.dump(metadata, f, indent=2)
    return paths

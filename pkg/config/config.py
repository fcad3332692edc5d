"""
Configuration Management for the POLE Signed-Graph Toolkit
===========================================================
Centralized configuration for paths, numerical tolerances, and experiment
parameters shared by the library modules and the command-line interface.
"""

import os
from pathlib import Path

import numpy as np
from dotenv import load_dotenv

load_dotenv()

# Project Root Directory
PROJECT_ROOT = Path(__file__).parent.parent.absolute()

# Directory Paths
DATA_DIR = Path(os.getenv("POLE_DATA_DIR", PROJECT_ROOT / "data"))
OUTPUT_DIR = PROJECT_ROOT / "output"

# Signed datasets (edge lists supplied by the user, see data/README.md)
DATASET_FILES = {
    "congress": DATA_DIR / "congress.edgelist",
    "congress_labels": DATA_DIR / "congress_labels.csv",
    "wow_ep8": DATA_DIR / "wow_ep8.edgelist",
    "bitcoin_alpha": DATA_DIR / "bitcoin_alpha.edgelist",
    "bitcoin_otc": DATA_DIR / "bitcoin_otc.edgelist",
    "referendum": DATA_DIR / "referendum.edgelist",
    "wiki_rfa": DATA_DIR / "wiki_rfa.edgelist",
}

# Output Files
OUTPUT_FILES = {
    "polarization": OUTPUT_DIR / "polarization",
    "embedding": OUTPUT_DIR / "embedding.txt",
    "linkpred": OUTPUT_DIR / "linkpred",
    "synthetic": OUTPUT_DIR / "synthetic",
    "similarity": OUTPUT_DIR / "similarity.csv",
}

# Random-walk dynamics
DYNAMICS_PARAMS = {
    "tol": 1e-9,
    "max_dense_nodes": 20_000,
    "max_walk_length": 6,
    "column_block_size": 512,
    "n_jobs": 1,
}

# Signed autocovariance embedding
EMBEDDING_PARAMS = {
    "dimension": 40,
    "dense_solver_max_nodes": 3_000,
    "eigsh_tol": 1e-10,
    "eigsh_start_seed": 0,
    "similarity_block_size": 1_024,
}

# Signed link prediction benchmark
EVALUATION_PARAMS = {
    "removal_fraction": 0.2,
    "inner_fraction": 0.1,
    "markov_time_grid": tuple(float(t) for t in np.power(10.0, np.arange(11) / 10.0)),
    "deciles": tuple(round(i / 10, 1) for i in range(1, 11)),
    "l2_penalty": 1e-4,
    "learning_rate": 0.5,
    "max_iter": 10_000,
    "convergence_tol": 1e-8,
    "feature_sample_size": 5_000,
    "full_sort_max_nodes": 5_000,
}

# Synthetic reference graphs
SYNTHESIS_PARAMS = {
    "nodes_per_community": 50,
    "mean_degree": 12.0,
    "inter_community_ratio": 0.15,
    "topology_attempts": 100,
    "partition_attempts": 10_000,
    "partition_mode": "balanced",
}

# Command-line interface
CLI_PARAMS = {
    "format_version": "1",
    "default_seed": 0,
    "default_markov_time": 10.0,
    "exit_codes": {
        "success": 0,
        "invalid_input": 2,
        "infeasible": 3,
        "numerical": 4,
    },
}

# Logging Configuration
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_LEVEL = os.getenv("POLE_LOG_LEVEL", "INFO")

def get_path(category: str, key: str) -> Path:
    """
    Get a path from the configuration.

    Args:
        category: One of 'dataset', 'output'
        key: The specific file/directory key

    Returns:
        Path object
    """
    categories = {
        "dataset": DATASET_FILES,
        "output": OUTPUT_FILES,
    }

    if category not in categories:
        raise ValueError(f"Unknown category: {category}")

    if key not in categories[category]:
        raise ValueError(f"Unknown key '{key}' in category '{category}'")

    return categories[category][key]

def ensure_dir(path: Path) -> Path:
    """Ensure a directory exists, create if it doesn't."""
    path.mkdir(parents=True, exist_ok=True)
    return path

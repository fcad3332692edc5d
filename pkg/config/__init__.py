"""Configuration module for the POLE signed-graph toolkit."""

from .config import (
    PROJECT_ROOT,
    DATA_DIR,
    OUTPUT_DIR,
    DATASET_FILES,
    OUTPUT_FILES,
    DYNAMICS_PARAMS,
    EMBEDDING_PARAMS,
    EVALUATION_PARAMS,
    SYNTHESIS_PARAMS,
    CLI_PARAMS,
    LOG_FORMAT,
    LOG_LEVEL,
    get_path,
    ensure_dir,
)

__all__ = [
    "PROJECT_ROOT",
    "DATA_DIR",
    "OUTPUT_DIR",
    "DATASET_FILES",
    "OUTPUT_FILES",
    "DYNAMICS_PARAMS",
    "EMBEDDING_PARAMS",
    "EVALUATION_PARAMS",
    "SYNTHESIS_PARAMS",
    "CLI_PARAMS",
    "LOG_FORMAT",
    "LOG_LEVEL",
    "get_path",
    "ensure_dir",
]

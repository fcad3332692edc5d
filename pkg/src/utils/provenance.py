"""
Run Provenance
==============
Every artifact written by the CLI embeds the exact run configuration and the
format version, and nothing time-dependent, so reruns are byte-identical.

- text/CSV artifacts start with `# ` lines (readers skip them)
- JSON artifacts carry a top-level "provenance" key
"""

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
import yaml

from config import CLI_PARAMS
from src.utils.exceptions import InvalidInputError


def jsonable(value: Any) -> Any:
    """Convert numpy scalars/arrays, tuples and paths; non-finite floats become None."""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [jsonable(v) for v in value]
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, (np.floating, float)):
        return float(value) if math.isfinite(value) else None
    if isinstance(value, Path):
        return str(value)
    return value


@dataclass(frozen=True)
class RunConfig:
    """Resolved parameters of one command invocation."""

    command: str
    params: dict = field(default_factory=dict)
    format_version: str = CLI_PARAMS["format_version"]

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "format_version": self.format_version,
            "params": jsonable(self.params),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def header_lines(self) -> list[str]:
        return [f"pole-signed format {self.format_version}", f"config {self.to_json()}"]


def load_config_file(path: Path | str) -> dict:
    """Read a JSON or YAML run configuration (JSON is valid YAML)."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except OSError as e:
        raise InvalidInputError(f"Cannot read config {path}: {e}") from e
    except yaml.YAMLError as e:
        raise InvalidInputError(f"Malformed config {path}: {e}") from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise InvalidInputError(f"Config {path} must hold a mapping of parameters")
    return {str(k).replace("-", "_"): v for k, v in data.items()}


def write_csv(frame: pd.DataFrame, path: Path | str, run_config: RunConfig, index: bool = False) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for line in run_config.header_lines():
            f.write(f"# {line}\n")
        frame.to_csv(f, index=index, float_format="%.17g", lineterminator="\n")
    return path


def write_json(payload: dict, path: Path | str, run_config: RunConfig) -> Path:
    path = Path(path)
    document = {**jsonable(payload), "provenance": run_config.to_dict()}
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(document, f, sort_keys=True, indent=2, allow_nan=False)
        f.write("\n")
    return path

"""
Test Provenance Module
======================
Tests for run-configuration headers, config files and artifact writers.
"""

import json
import sys
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.utils.exceptions import InvalidInputError  # noqa: E402
from src.utils.provenance import RunConfig, jsonable, load_config_file, write_csv, write_json  # noqa: E402


def test_jsonable_conversions():
    """Test numpy scalars, tuples, paths and non-finite floats."""
    value = jsonable({"a": np.int64(3), "b": (np.float64(0.5), np.nan), "c": Path("x/y"), "d": np.bool_(True)})
    assert value == {"a": 3, "b": [0.5, None], "c": "x/y", "d": True}
    assert type(value["d"]) is bool
    print("✓ jsonable conversions")


def test_header_is_stable():
    """Test that header lines depend only on the parameters."""
    a = RunConfig("synth", {"seed": 1, "scheme": "polarized"})
    b = RunConfig("synth", {"scheme": "polarized", "seed": 1})
    assert a.header_lines() == b.header_lines()
    assert a.header_lines()[0] == "pole-signed format 1"
    print("✓ Headers are order-independent")


def test_load_config_file(tmp_path):
    """Test YAML and JSON configs, dashed keys and bad files."""
    yaml_file = tmp_path / "run.yaml"
    yaml_file.write_text("t-grid: [1, 10]\nseed: 4\n", encoding="utf-8")
    assert load_config_file(yaml_file) == {"t_grid": [1, 10], "seed": 4}

    json_file = tmp_path / "run.json"
    json_file.write_text('{"k": 8}', encoding="utf-8")
    assert load_config_file(json_file) == {"k": 8}

    listing = tmp_path / "list.yaml"
    listing.write_text("- 1\n- 2\n", encoding="utf-8")
    with pytest.raises(InvalidInputError):
        load_config_file(listing)
    with pytest.raises(InvalidInputError):
        load_config_file(tmp_path / "missing.yaml")
    print("✓ Config files loaded")


def test_writers_embed_provenance(tmp_path):
    """Test CSV headers and the JSON provenance key."""
    rc = RunConfig("balance", {"graph": Path("g.edgelist")})
    csv_path = write_csv(pd.DataFrame({"x": [0.1, 2.0]}), tmp_path / "a.csv", rc)
    lines = csv_path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "# pole-signed format 1"
    assert lines[1].startswith("# config {")
    np.testing.assert_allclose(pd.read_csv(csv_path, comment="#")["x"], [0.1, 2.0], rtol=1e-15)

    json_path = write_json({"balance": None, "score": np.float64(0.25)}, tmp_path / "a.json", rc)
    payload = json.loads(json_path.read_text(encoding="utf-8"))
    assert payload["score"] == 0.25
    assert payload["provenance"]["params"] == {"graph": "g.edgelist"}
    print("✓ Artifacts carry their provenance")


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

"""Data Collection Module for the POLE toolkit

Real signed datasets are supplied by the user as edge lists (see
data/README.md); this module generates the synthetic reference graphs:
- synthetic_graphs: Planted-partition topology with polarized and
  unpolarized sign schemes, plus community sidecar files
"""

from src.data_collection.synthetic_graphs import (
    SyntheticSpec,
    assign_signs_polarized,
    assign_signs_unpolarized,
    generate_synthetic,
    generate_topology,
    read_communities,
    write_communities,
)

__all__ = [
    "SyntheticSpec",
    "assign_signs_polarized",
    "assign_signs_unpolarized",
    "generate_synthetic",
    "generate_topology",
    "read_communities",
    "write_communities",
]

"""Graph Core for the POLE toolkit

This package holds the signed-graph data model and its ingestion:
- signed_graph: Immutable SignedGraph (adjacency, degrees, volume, labels)
- edge_list: Edge-list parsing, merging policy, serialization, label sidecars
- components: Connectivity checks and largest-component extraction
"""

from src.preprocessing.components import is_connected, largest_connected_component
from src.preprocessing.edge_list import (
    EdgeRecord,
    IngestOptions,
    format_edge_list,
    ingest_edge_list,
    parse_edge_lines,
    parse_node_order,
    read_edge_list,
    read_node_labels,
    write_edge_list,
)
from src.preprocessing.signed_graph import SignedGraph

__all__ = [
    "EdgeRecord",
    "IngestOptions",
    "SignedGraph",
    "format_edge_list",
    "ingest_edge_list",
    "is_connected",
    "largest_connected_component",
    "parse_edge_lines",
    "parse_node_order",
    "read_edge_list",
    "read_node_labels",
    "write_edge_list",
]

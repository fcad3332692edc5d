"""
Edge-List Ingestion
===================
Reads signed edge lists and turns them into a SignedGraph.

File format: UTF-8 text, one edge per line, whitespace- or comma-separated
`source target weight`; lines starting with `#` or `%` are ignored. Extra
trailing columns (e.g. the timestamp column of the Bitcoin rating dumps) are
ignored.

Ingestion policy:
1. Node labels get dense indices in first-appearance order, unless a node
   order is given (IngestOptions.node_order, or a `# nodes ...` line)
2. Directed/duplicate records are merged by summing weights
3. Self-loops are dropped; a merged weight of exactly 0 drops the edge
4. Nodes left isolated by the drops are removed (counted in metadata)
"""

import logging
import math
import re
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Hashable, Iterable, Sequence

import numpy as np
import pandas as pd

from src.preprocessing.signed_graph import SignedGraph
from src.utils.exceptions import InvalidInputError

logger = logging.getLogger(__name__)

_SEPARATORS = re.compile(r"[,\s]+")
NODE_ORDER_PREFIX = "# nodes "


@dataclass(frozen=True)
class EdgeRecord:
    """One `source target weight` line."""

    source_label: Hashable
    target_label: Hashable
    weight: float

    def __post_init__(self):
        if not math.isfinite(self.weight):
            raise InvalidInputError(f"Edge {self.source_label}-{self.target_label}: non-finite weight")
        if self.weight == 0:
            raise InvalidInputError(f"Edge {self.source_label}-{self.target_label}: weight must be non-zero")


@dataclass(frozen=True)
class IngestOptions:
    """
    Options for parsing and ingesting edge lists.

    Args:
        comment_prefixes: Lines starting with any of these are skipped
        default_weight: Weight for two-column lines (unweighted topologies);
            None makes two-column lines an error
        node_order: Labels in index order; labels not listed follow in
            first-appearance order
    """

    comment_prefixes: tuple[str, ...] = ("#", "%")
    default_weight: float | None = None
    node_order: tuple | None = None


def parse_edge_lines(lines: Iterable[str], options: IngestOptions | None = None) -> list[EdgeRecord]:
    """
    Parse edge-list lines into records.

    Raises:
        InvalidInputError: On malformed lines or non-numeric weights
    """
    options = options or IngestOptions()
    records = []
    for line_num, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith(options.comment_prefixes):
            continue
        parts = [p for p in _SEPARATORS.split(line) if p]
        if len(parts) == 2 and options.default_weight is not None:
            parts.append(repr(options.default_weight))
        if len(parts) < 3:
            raise InvalidInputError(
                f"Line {line_num}: expected 'source target weight', got '{line}'"
            )
        try:
            weight = float(parts[2])
        except ValueError:
            raise InvalidInputError(f"Line {line_num}: non-numeric weight '{parts[2]}'") from None
        try:
            records.append(EdgeRecord(parts[0], parts[1], weight))
        except InvalidInputError as e:
            raise InvalidInputError(f"Line {line_num}: {e}") from None
    return records


def parse_node_order(lines: Iterable[str]) -> tuple | None:
    """Labels of the first `# nodes ...` line, or None when there is none."""
    for line in lines:
        if line.startswith(NODE_ORDER_PREFIX):
            return tuple(line[len(NODE_ORDER_PREFIX):].split())
    return None


def read_edge_list(path: Path | str, options: IngestOptions | None = None) -> SignedGraph:
    """Read and ingest an edge-list file; a `# nodes` line fixes the node order."""
    path = Path(path)
    options = options or IngestOptions()
    try:
        with open(path, "r", encoding="utf-8") as f:
            lines = f.readlines()
    except OSError as e:
        raise InvalidInputError(f"Cannot read edge list {path}: {e}") from e
    records = parse_edge_lines(lines, options)
    if options.node_order is None:
        node_order = parse_node_order(lines)
        if node_order is not None:
            options = replace(options, node_order=node_order)
    graph = ingest_edge_list(records, options)
    logger.info("Loaded %s from %s", graph, path)
    return graph


def ingest_edge_list(lines: Sequence[EdgeRecord], options: IngestOptions | None = None) -> SignedGraph:
    """
    Build a SignedGraph from edge records.

    Args:
        lines: Edge records (any orientation, duplicates allowed)
        options: Ingestion options

    Returns:
        SignedGraph with dense indices in first-appearance order

    Raises:
        InvalidInputError: Empty input, or no edge survives merging
    """
    options = options or IngestOptions()
    if len(lines) == 0:
        raise InvalidInputError("Edge list is empty")

    index: dict = {}
    for label in options.node_order or ():
        if label in index:
            raise InvalidInputError(f"Node '{label}' listed twice in the node order")
        index[label] = len(index)
    merged: dict[tuple[int, int], float] = {}
    self_loops = 0
    for record in lines:
        u = index.setdefault(record.source_label, len(index))
        v = index.setdefault(record.target_label, len(index))
        if u == v:
            self_loops += 1
            continue
        key = (u, v) if u < v else (v, u)
        merged[key] = merged.get(key, 0.0) + float(record.weight)

    zero_merges = sum(1 for w in merged.values() if w == 0.0)
    edges = [(u, v, w) for (u, v), w in merged.items() if w != 0.0]
    if not edges:
        raise InvalidInputError("No edges remain after dropping self-loops and zero-weight merges")

    u, v, w = (np.array(col) for col in zip(*edges))
    labels = list(index)
    used = np.zeros(len(labels), dtype=bool)
    used[u] = True
    used[v] = True
    isolated = int(np.sum(~used))
    if isolated:
        logger.warning("Removed %d isolated node(s) left after dropping edges", isolated)
    remap = np.cumsum(used) - 1
    kept_labels = tuple(label for label, keep in zip(labels, used) if keep)

    metadata = {
        "records": len(lines),
        "self_loops_dropped": self_loops,
        "zero_weight_edges_dropped": zero_merges,
        "isolated_nodes_removed": isolated,
    }
    return SignedGraph.from_edges(len(kept_labels), remap[u], remap[v], w, kept_labels, metadata)


def format_edge_list(g: SignedGraph) -> str:
    """
    Serialize in canonical order (u < v by internal index, 17 significant digits).

    The first line, `# nodes <label_0> ... <label_n-1>`, records the index
    order so that read_edge_list rebuilds the same adjacency.
    """
    for label in g.node_labels:
        if _SEPARATORS.search(str(label)) or str(label).startswith(("#", "%")):
            raise InvalidInputError(f"Label '{label}' cannot be written to an edge list")
    u, v, w = g.edge_arrays()
    labels = g.node_labels
    nodes = NODE_ORDER_PREFIX + " ".join(str(label) for label in labels) + "\n"
    return nodes + "".join(f"{labels[a]} {labels[b]} {x:.17g}\n" for a, b, x in zip(u, v, w))


def write_edge_list(g: SignedGraph, path: Path | str, header: Sequence[str] = ()) -> Path:
    """Write `g` as an edge list, with optional `# ` header lines."""
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for line in header:
            f.write(f"# {line}\n")
        f.write(format_edge_list(g))
    return path


def read_node_labels(path: Path | str) -> dict[str, str]:
    """
    Read an `id,label` sidecar (e.g. Congress ids to congressperson names).

    A first row reading `id,label` is treated as a header.
    """
    try:
        df = pd.read_csv(path, header=None, names=["id", "label"], dtype=str, comment="#",
                         skipinitialspace=True, keep_default_na=False)
    except (OSError, pd.errors.ParserError) as e:
        raise InvalidInputError(f"Cannot read node labels {path}: {e}") from e
    if len(df) and (df.iloc[0]["id"], df.iloc[0]["label"]) == ("id", "label"):
        df = df.iloc[1:]
    return dict(zip(df["id"].str.strip(), df["label"].str.strip()))

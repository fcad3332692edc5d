"""
Synthetic Reference Graphs
==========================
Two-community signed graphs with the same topology and two sign schemes:

- polarized: intra-community links positive, inter-community links negative
- unpolarized: nodes are split into two random groups whose cut size equals
  the structural cut exactly; links are signed by the same inter/intra rule
  on the random groups

Both schemes are perfectly balanced (every triangle crosses any bipartition
an even number of times) and carry the same number of negative links, so
they differ only in how the negative links line up with the structure.

The topology is a planted partition (networkx stochastic block model) with
two equal blocks:

    p_in  = (1 - mu) k / (n_c - 1)
    p_out = mu k / n_c

which gives expected degree k and expected inter-community edge fraction mu.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import networkx as nx
import numpy as np
import pandas as pd

from config import SYNTHESIS_PARAMS
from src.preprocessing.signed_graph import SignedGraph
from src.utils.exceptions import InfeasibleOperationError, InvalidInputError
from src.utils.seeding import stream_rng, stream_seed

logger = logging.getLogger(__name__)

SCHEMES = ("polarized", "unpolarized")
PARTITION_MODES = ("free", "balanced")


@dataclass(frozen=True)
class SyntheticSpec:
    """Parameters of a synthetic two-community signed graph."""

    nodes_per_community: int = SYNTHESIS_PARAMS["nodes_per_community"]
    mean_degree: float = SYNTHESIS_PARAMS["mean_degree"]
    inter_community_ratio: float = SYNTHESIS_PARAMS["inter_community_ratio"]
    seed: int = 0
    scheme: str = "polarized"
    partition_mode: str = SYNTHESIS_PARAMS["partition_mode"]

    def __post_init__(self):
        if int(self.nodes_per_community) != self.nodes_per_community or self.nodes_per_community < 2:
            raise InvalidInputError(f"nodes_per_community must be an integer >= 2, got {self.nodes_per_community}")
        if not 0 < self.inter_community_ratio < 1:
            raise InvalidInputError(
                f"inter_community_ratio must be in (0, 1), got {self.inter_community_ratio}"
            )
        if not 0 < self.mean_degree < self.node_count:
            raise InvalidInputError(
                f"mean_degree must be in (0, {self.node_count}), got {self.mean_degree}"
            )
        if self.scheme not in SCHEMES:
            raise InvalidInputError(f"Unknown scheme '{self.scheme}', expected one of {SCHEMES}")
        if self.partition_mode not in PARTITION_MODES:
            raise InvalidInputError(
                f"Unknown partition mode '{self.partition_mode}', expected one of {PARTITION_MODES}"
            )
        if self.seed < 0:
            raise InvalidInputError(f"Seed must be non-negative, got {self.seed}")

    @property
    def node_count(self) -> int:
        return 2 * int(self.nodes_per_community)

    def block_probabilities(self) -> tuple[float, float]:
        """(p_in, p_out), clipped to 1 with a warning."""
        n_c = int(self.nodes_per_community)
        p_in = (1 - self.inter_community_ratio) * self.mean_degree / (n_c - 1)
        p_out = self.inter_community_ratio * self.mean_degree / n_c
        if p_in > 1 or p_out > 1:
            logger.warning(
                "Block probabilities (%.3f, %.3f) exceed 1 and were clipped; "
                "realized degree will fall below %g", p_in, p_out, self.mean_degree,
            )
        return min(p_in, 1.0), min(p_out, 1.0)


def generate_topology(spec: SyntheticSpec) -> tuple[SignedGraph, np.ndarray]:
    """
    Connected planted-partition topology with unit positive weights.

    Retries with an incremented salt on the "synth-topology" stream until the
    graph is connected.

    Returns:
        (graph, communities) where communities[u] is 0 or 1

    Raises:
        InfeasibleOperationError: Still disconnected after the attempt limit
    """
    n_c = int(spec.nodes_per_community)
    p_in, p_out = spec.block_probabilities()
    attempts = SYNTHESIS_PARAMS["topology_attempts"]

    for attempt in range(attempts):
        G = nx.stochastic_block_model(
            [n_c, n_c], [[p_in, p_out], [p_out, p_in]],
            seed=stream_seed(spec.seed, "synth-topology", attempt),
        )
        if nx.is_connected(G):
            break
    else:
        raise InfeasibleOperationError(
            f"No connected topology after {attempts} attempts; raise mean_degree or inter_community_ratio"
        )

    edges = np.array(sorted(G.edges()), dtype=np.int64)
    communities = np.repeat([0, 1], n_c)
    metadata = {
        "generator": "planted-partition",
        "nodes_per_community": n_c,
        "mean_degree": spec.mean_degree,
        "inter_community_ratio": spec.inter_community_ratio,
        "seed": spec.seed,
        "topology_attempt": attempt,
    }
    graph = SignedGraph.from_edges(2 * n_c, edges[:, 0], edges[:, 1], np.ones(len(edges)), metadata=metadata)
    return graph, communities


def cut_size(g: SignedGraph, communities: np.ndarray) -> int:
    u, v, _ = g.edge_arrays()
    return int(np.sum(communities[u] != communities[v]))


def _signed_by_partition(topology: SignedGraph, partition: np.ndarray, metadata: dict) -> SignedGraph:
    u, v, w = topology.edge_arrays()
    signs = np.where(partition[u] == partition[v], 1.0, -1.0)
    return SignedGraph.from_edges(
        topology.node_count, u, v, signs * np.abs(w), topology.node_labels,
        {**topology.metadata, **metadata},
    )


def assign_signs_polarized(topology: SignedGraph, communities: np.ndarray) -> SignedGraph:
    """Negative inter-community links, positive intra-community links."""
    communities = np.asarray(communities)
    return _signed_by_partition(topology, communities, {
        "scheme": "polarized",
        "structural_cut": cut_size(topology, communities),
    })


def prefix_cut_sizes(u: np.ndarray, v: np.ndarray, order: np.ndarray) -> np.ndarray:
    """
    cut[s] of the prefix {order[0], ..., order[s-1]} for s = 1..n-1.

    cut(S) = sum of degrees in S - 2 * edges inside S; an edge is inside the
    prefix from step max(rank_u, rank_v) + 1 on.
    """
    n = order.size
    rank = np.empty(n, dtype=np.int64)
    rank[order] = np.arange(n)
    degree_by_rank = np.bincount(np.concatenate([rank[u], rank[v]]), minlength=n)
    inside_by_rank = np.bincount(np.maximum(rank[u], rank[v]), minlength=n)
    cuts = np.cumsum(degree_by_rank) - 2 * np.cumsum(inside_by_rank)
    return cuts[:-1]


def assign_signs_unpolarized(
    topology: SignedGraph,
    communities: np.ndarray,
    seed: int,
    partition_mode: str | None = None,
    attempts: int | None = None,
) -> SignedGraph:
    """
    Signs from a random bipartition with the structural cut size.

    Each attempt draws a random node order ("synth-partition" stream).
    "balanced" (default) splits it into halves of n // 2 and n - n // 2
    nodes; "free" scans every prefix, so the two sides may be very unequal.
    The first partition whose cut equals the structural cut is taken. After
    the attempt limit the closest cut found is used, with exact_cut False
    in metadata.
    """
    partition_mode = SYNTHESIS_PARAMS["partition_mode"] if partition_mode is None else partition_mode
    attempts = SYNTHESIS_PARAMS["partition_attempts"] if attempts is None else attempts
    if partition_mode not in PARTITION_MODES:
        raise InvalidInputError(f"Unknown partition mode '{partition_mode}'")

    communities = np.asarray(communities)
    target = cut_size(topology, communities)
    u, v, _ = topology.edge_arrays()
    n = topology.node_count
    rng = stream_rng(seed, "synth-partition")

    half = n // 2
    best = None  # (distance, order, prefix size, cut)
    for attempt in range(attempts):
        order = rng.permutation(n)
        if partition_mode == "balanced":
            side = np.zeros(n, dtype=bool)
            side[order[:half]] = True
            cuts = np.array([np.count_nonzero(side[u] != side[v])])
            sizes = np.array([half])
        else:
            cuts = prefix_cut_sizes(u, v, order)
            sizes = np.arange(1, n)
        distance = np.abs(cuts - target)
        i = int(np.argmin(distance))
        if best is None or distance[i] < best[0]:
            best = (int(distance[i]), order, int(sizes[i]), int(cuts[i]))
        if distance[i] == 0:
            break

    distance, order, size, cut = best
    if distance:
        logger.warning(
            "No %s partition with cut %d after %d attempts; using cut %d", partition_mode, target, attempts, cut,
        )
    partition = np.zeros(n, dtype=np.int64)
    partition[order[:size]] = 1
    return _signed_by_partition(topology, partition, {
        "scheme": "unpolarized",
        "partition_mode": partition_mode,
        "structural_cut": target,
        "random_cut": cut,
        "exact_cut": distance == 0,
        "partition_attempts": attempt + 1,
        "random_partition": tuple(int(x) for x in partition),
    })


def generate_synthetic(spec: SyntheticSpec) -> tuple[SignedGraph, np.ndarray]:
    """Topology plus its sign scheme; returns (graph, structural communities)."""
    topology, communities = generate_topology(spec)
    if spec.scheme == "polarized":
        graph = assign_signs_polarized(topology, communities)
    else:
        graph = assign_signs_unpolarized(topology, communities, spec.seed, spec.partition_mode)
    logger.info("Generated %s %s", spec.scheme, graph)
    return graph, communities


def write_communities(
    path: Path | str, g: SignedGraph, communities: np.ndarray, header: Sequence[str] = ()
) -> Path:
    """Sidecar CSV `label,community` with optional `# ` header lines."""
    path = Path(path)
    frame = pd.DataFrame({"label": list(g.node_labels), "community": np.asarray(communities, dtype=int)})
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for line in header:
            f.write(f"# {line}\n")
        frame.to_csv(f, index=False, lineterminator="\n")
    return path


def read_communities(path: Path | str) -> dict[str, int]:
    """Read a `label,community` sidecar (externally generated LFR files included)."""
    try:
        frame = pd.read_csv(path, comment="#", dtype={"label": str, "community": int})
    except (OSError, ValueError) as e:
        raise InvalidInputError(f"Cannot read communities {path}: {e}") from e
    return dict(zip(frame["label"], frame["community"]))

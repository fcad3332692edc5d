"""
Connectivity-Preserving Edge Split
==================================
Holds out a random fraction of links for link prediction while keeping the
residual graph connected:

1. Draw a uniform spanning tree of |A| with Wilson's algorithm
2. Protect the tree edges
3. Remove a uniform sample of floor(fraction * m) non-tree edges

Signs are not stratified. All randomness comes from the named stream
("split" for the outer split, "inner-split" for validation splits).
"""

import logging
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from config import EVALUATION_PARAMS
from src.preprocessing.components import is_connected
from src.preprocessing.signed_graph import SignedGraph
from src.utils.exceptions import InfeasibleOperationError, InvalidInputError
from src.utils.seeding import stream_rng

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SplitManifest:
    """
    Result of a held-out split. Node indices are shared by `original` and
    `residual`; `removed_pairs` rows are (u, v) with u < v in canonical order.
    """

    original: SignedGraph
    residual: SignedGraph
    removed_pairs: np.ndarray
    removed_weights: np.ndarray
    seed: int
    removal_fraction: float

    @property
    def removed_count(self) -> int:
        return int(self.removed_weights.size)

    @cached_property
    def removed_positive(self) -> dict[tuple[int, int], float]:
        return {
            (int(u), int(v)): float(w)
            for (u, v), w in zip(self.removed_pairs, self.removed_weights) if w > 0
        }

    @cached_property
    def removed_negative(self) -> dict[tuple[int, int], float]:
        return {
            (int(u), int(v)): float(w)
            for (u, v), w in zip(self.removed_pairs, self.removed_weights) if w < 0
        }

    @property
    def candidate_count(self) -> int:
        """Unordered pairs not linked in the residual graph."""
        n = self.residual.node_count
        return n * (n - 1) // 2 - self.residual.edge_counts[0]

    def summary(self) -> dict:
        return {
            "seed": self.seed,
            "removal_fraction": self.removal_fraction,
            "removed_positive": len(self.removed_positive),
            "removed_negative": len(self.removed_negative),
            "residual_edges": self.residual.edge_counts[0],
            "candidates": self.candidate_count,
        }


def uniform_spanning_tree(g: SignedGraph, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """
    Wilson's algorithm: loop-erased random walks with uniform neighbor steps.

    Returns tree edges (u, v) with u < v, n - 1 of them.
    """
    n = g.node_count
    in_tree = np.zeros(n, dtype=bool)
    next_node = np.full(n, -1, dtype=np.int64)
    root = int(rng.integers(n))
    in_tree[root] = True

    for start in range(n):
        u = start
        while not in_tree[u]:
            nbrs = g.neighbors(u)
            next_node[u] = nbrs[rng.integers(nbrs.size)]
            u = next_node[u]
        # overwriting next_node above erased any loops
        u = start
        while not in_tree[u]:
            in_tree[u] = True
            u = next_node[u]

    children = np.flatnonzero(np.arange(n) != root)
    parents = next_node[children]
    return np.minimum(children, parents), np.maximum(children, parents)


def split_edges(
    g: SignedGraph, fraction: float | None = None, seed: int = 0, stream: str = "split"
) -> SplitManifest:
    """
    Remove floor(fraction * m) random non-tree edges.

    Args:
        g: Connected signed graph
        fraction: Held-out fraction in (0, 1) (default 0.2)
        seed: Per-command seed
        stream: Named random stream

    Raises:
        InvalidInputError: fraction outside (0, 1) or disconnected input
        InfeasibleOperationError: Not enough non-tree edges to remove
    """
    fraction = EVALUATION_PARAMS["removal_fraction"] if fraction is None else float(fraction)
    if not 0 < fraction < 1:
        raise InvalidInputError(f"Removal fraction must be in (0, 1), got {fraction}")
    if not is_connected(g):
        raise InvalidInputError("Edge split needs a connected graph; take the largest component first")

    rng = stream_rng(seed, stream)
    n = g.node_count
    u, v, w = g.edge_arrays()
    m = w.size

    tree_u, tree_v = uniform_spanning_tree(g, rng)
    protected = np.isin(u * n + v, tree_u * n + tree_v)
    candidates = np.flatnonzero(~protected)
    n_remove = math.floor(fraction * m)

    if candidates.size == 0:
        raise InfeasibleOperationError("Graph is a tree: every edge is needed for connectivity")
    if n_remove == 0:
        raise InfeasibleOperationError(
            f"fraction={fraction} of {m} edges removes nothing; use a larger fraction"
        )
    if candidates.size < n_remove:
        raise InfeasibleOperationError(
            f"Only {candidates.size} non-tree edges for {n_remove} removals; "
            f"use fraction <= {candidates.size / m:.4f}"
        )

    removed = np.sort(rng.choice(candidates, size=n_remove, replace=False))
    keep = np.ones(m, dtype=bool)
    keep[removed] = False
    residual = SignedGraph.from_edges(
        n, u[keep], v[keep], w[keep], g.node_labels,
        {**g.metadata, "split_seed": seed, "split_stream": stream},
    )
    if not is_connected(residual):
        raise InfeasibleOperationError("Residual graph lost connectivity")

    manifest = SplitManifest(
        original=g,
        residual=residual,
        removed_pairs=np.column_stack([u[removed], v[removed]]),
        removed_weights=w[removed],
        seed=seed,
        removal_fraction=fraction,
    )
    logger.info(
        "Split (%s, seed=%d): removed %d positive / %d negative links",
        stream, seed, len(manifest.removed_positive), len(manifest.removed_negative),
    )
    return manifest


def inner_split(manifest: SplitManifest, seed: int, fraction: float | None = None) -> SplitManifest:
    """Validation split of a residual graph (10% by default, "inner-split" stream)."""
    fraction = EVALUATION_PARAMS["inner_fraction"] if fraction is None else fraction
    return split_edges(manifest.residual, fraction, seed, stream="inner-split")

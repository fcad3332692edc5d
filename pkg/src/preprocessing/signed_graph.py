"""
Signed Graph Data Model
=======================
Immutable undirected weighted signed graph. Houses the signed adjacency A,
the absolute degrees d_u = sum_v |A_uv|, the volume vol(G) = sum_u d_u and
the external node labels (dense internal indices 0..n-1).
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Hashable, Mapping, Sequence

import numpy as np
import scipy.sparse as sp

from src.utils.exceptions import InvalidInputError


@dataclass(frozen=True, eq=False)
class SignedGraph:
    """
    Undirected signed graph with no self-loops and no isolated nodes.

    Args:
        adjacency: Square symmetric sparse matrix of signed weights
        node_labels: External identifier of every internal index
        metadata: Free-form provenance (ingestion counters, generator info)
    """

    adjacency: sp.csr_matrix
    node_labels: tuple
    metadata: Mapping[str, Any] = field(default_factory=dict)
    degrees: np.ndarray = field(init=False, repr=False)
    volume: float = field(init=False, repr=False)

    def __post_init__(self):
        A = sp.csr_matrix(self.adjacency, dtype=np.float64, copy=True)
        A.eliminate_zeros()
        A.sort_indices()
        n = A.shape[0]

        if A.shape[0] != A.shape[1]:
            raise InvalidInputError(f"Adjacency must be square, got shape {A.shape}")
        if n == 0:
            raise InvalidInputError("Graph has no nodes")
        if len(self.node_labels) != n:
            raise InvalidInputError(
                f"Got {len(self.node_labels)} labels for {n} nodes"
            )
        if len(set(self.node_labels)) != n:
            raise InvalidInputError("Node labels must be unique")
        if not np.all(np.isfinite(A.data)):
            raise InvalidInputError("Adjacency contains non-finite weights")
        if (A - A.T).count_nonzero() != 0:
            raise InvalidInputError("Adjacency is not symmetric")
        if np.any(A.diagonal() != 0):
            raise InvalidInputError("Adjacency has self-loops")

        degrees = np.asarray(abs(A).sum(axis=1)).ravel()
        if np.any(degrees <= 0):
            isolated = int(np.sum(degrees <= 0))
            raise InvalidInputError(f"Graph has {isolated} isolated node(s)")
        degrees.flags.writeable = False

        object.__setattr__(self, "adjacency", A)
        object.__setattr__(self, "node_labels", tuple(self.node_labels))
        object.__setattr__(self, "metadata", dict(self.metadata))
        object.__setattr__(self, "degrees", degrees)
        object.__setattr__(self, "volume", float(degrees.sum()))

    @classmethod
    def from_edges(
        cls,
        node_count: int,
        sources: Sequence[int],
        targets: Sequence[int],
        weights: Sequence[float],
        node_labels: Sequence[Hashable] | None = None,
        metadata: Mapping[str, Any] | None = None,
    ) -> "SignedGraph":
        """
        Build a graph from undirected edges given once each (u != v).

        Duplicate pairs are summed; weights that sum to exactly zero vanish.
        """
        u = np.asarray(sources, dtype=np.int64)
        v = np.asarray(targets, dtype=np.int64)
        w = np.asarray(weights, dtype=np.float64)
        if np.any(u == v):
            raise InvalidInputError("from_edges does not accept self-loops")
        rows = np.concatenate([u, v])
        cols = np.concatenate([v, u])
        data = np.concatenate([w, w])
        A = sp.coo_matrix((data, (rows, cols)), shape=(node_count, node_count)).tocsr()
        A.sum_duplicates()
        if node_labels is None:
            node_labels = tuple(range(node_count))
        return cls(A, tuple(node_labels), metadata or {})

    @property
    def node_count(self) -> int:
        return self.adjacency.shape[0]

    @cached_property
    def abs_adjacency(self) -> sp.csr_matrix:
        return abs(self.adjacency).tocsr()

    @cached_property
    def label_index(self) -> dict:
        return {label: i for i, label in enumerate(self.node_labels)}

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Edges (u, v, w) with u < v in canonical order (by u, then v)."""
        upper = sp.triu(self.adjacency, k=1).tocoo()
        order = np.lexsort((upper.col, upper.row))
        return (
            upper.row[order].astype(np.int64),
            upper.col[order].astype(np.int64),
            upper.data[order],
        )

    @property
    def edge_counts(self) -> tuple[int, int]:
        """(m_total, m_negative)."""
        _, _, w = self.edge_arrays()
        return int(w.size), int(np.sum(w < 0))

    @property
    def negative_ratio(self) -> float:
        total, negative = self.edge_counts
        return negative / total

    @property
    def is_all_positive(self) -> bool:
        return bool(np.all(self.adjacency.data > 0))

    def neighbors(self, u: int) -> np.ndarray:
        start, end = self.adjacency.indptr[u], self.adjacency.indptr[u + 1]
        return self.adjacency.indices[start:end]

    def weight(self, u: int, v: int) -> float:
        return float(self.adjacency[u, v])

    def has_edge(self, u: int, v: int) -> bool:
        return self.weight(u, v) != 0.0

    def subgraph(self, nodes: Sequence[int]) -> "SignedGraph":
        """Induced subgraph on `nodes`, kept in ascending index order."""
        keep = np.unique(np.asarray(nodes, dtype=np.int64))
        A = self.adjacency[keep][:, keep]
        labels = tuple(self.node_labels[i] for i in keep)
        return SignedGraph(A, labels, self.metadata)

    def relabel(self, mapping: Mapping[Hashable, Hashable]) -> "SignedGraph":
        """Rename nodes; labels missing from `mapping` are kept."""
        labels = tuple(mapping.get(label, label) for label in self.node_labels)
        return SignedGraph(self.adjacency, labels, self.metadata)

    def absolute(self) -> "SignedGraph":
        """The unsigned graph |A| on the same nodes."""
        return SignedGraph(self.abs_adjacency, self.node_labels, self.metadata)

    def summary(self) -> dict:
        total, negative = self.edge_counts
        return {
            "nodes": self.node_count,
            "edges": total,
            "negative_edges": negative,
            "negative_ratio": negative / total,
            "volume": self.volume,
        }

    def __repr__(self) -> str:
        total, negative = self.edge_counts
        return f"SignedGraph(n={self.node_count}, m={total}, m_negative={negative})"

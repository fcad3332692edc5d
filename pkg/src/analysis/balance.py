"""
Social Balance
==============
Triangle statistics of a signed graph. A closed triangle is balanced when
the product of its three edge signs is positive (+++ or +--).
"""

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from src.preprocessing.signed_graph import SignedGraph

TRIAD_TYPES = ("+++", "++-", "+--", "---")


@dataclass(frozen=True)
class BalanceReport:
    """
    Balanced-triangle fraction.

    `balance` is None when the graph has no triangle (undefined, neither 0
    nor 1).
    """

    triangle_count: int
    balanced_count: int
    census: dict = field(default_factory=dict)

    @property
    def balance(self) -> float | None:
        if self.triangle_count == 0:
            return None
        return self.balanced_count / self.triangle_count

    def summary(self) -> dict:
        return {
            "triangles": self.triangle_count,
            "balanced": self.balanced_count,
            "balance": self.balance,
            "census": dict(self.census),
        }


def negative_edges_per_triangle(g: SignedGraph) -> Iterator[np.ndarray]:
    """
    Walk every triangle u < v < w once by intersecting sorted neighbor lists.

    Yields, per edge (u, v), the number of negative edges (0..3) of each
    triangle closed by a common neighbor w > v.
    """
    A = g.adjacency
    for u in range(g.node_count):
        nb = A.indices[A.indptr[u]:A.indptr[u + 1]]
        sg = A.data[A.indptr[u]:A.indptr[u + 1]]
        higher = nb > u
        hu, su = nb[higher], sg[higher]
        for v, s_uv in zip(hu, su):
            nv = A.indices[A.indptr[v]:A.indptr[v + 1]]
            sv = A.data[A.indptr[v]:A.indptr[v + 1]]
            beyond = nv > v
            _, iu, iv = np.intersect1d(hu, nv[beyond], assume_unique=True, return_indices=True)
            if iu.size:
                yield int(s_uv < 0) + (su[iu] < 0).astype(int) + (sv[beyond][iv] < 0).astype(int)


def triad_census(g: SignedGraph) -> dict[str, int]:
    """Triangle counts by sign pattern: +++, ++-, +--, ---."""
    counts = np.zeros(4, dtype=np.int64)
    for negatives in negative_edges_per_triangle(g):
        counts += np.bincount(negatives, minlength=4)
    return dict(zip(TRIAD_TYPES, (int(c) for c in counts)))


def social_balance(g: SignedGraph) -> BalanceReport:
    census = triad_census(g)
    total = sum(census.values())
    balanced = census["+++"] + census["+--"]
    return BalanceReport(total, balanced, census)

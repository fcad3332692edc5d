"""Connectivity queries on |A|."""

import logging

import numpy as np
from scipy.sparse.csgraph import connected_components

from src.preprocessing.signed_graph import SignedGraph

logger = logging.getLogger(__name__)


def component_labels(g: SignedGraph) -> tuple[int, np.ndarray]:
    """Number of components and the component id of every node."""
    return connected_components(g.abs_adjacency, directed=False, return_labels=True)


def is_connected(g: SignedGraph) -> bool:
    count, _ = component_labels(g)
    return count == 1


def largest_connected_component(g: SignedGraph) -> SignedGraph:
    """
    Induced subgraph on the largest component.

    Ties between equally large components go to the one containing the
    smallest node index. A connected graph is returned unchanged.
    """
    count, labels = component_labels(g)
    if count == 1:
        return g

    sizes = np.bincount(labels)
    smallest_member = np.full(count, g.node_count)
    np.minimum.at(smallest_member, labels, np.arange(g.node_count))
    candidates = np.flatnonzero(sizes == sizes.max())
    chosen = candidates[np.argmin(smallest_member[candidates])]

    nodes = np.flatnonzero(labels == chosen)
    logger.info(
        "Largest component keeps %d of %d nodes (%d components)",
        nodes.size, g.node_count, count,
    )
    return g.subgraph(nodes)

"""
Shared Test Fixtures
====================
Small signed graphs and random-graph factories used across the test modules.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.preprocessing.signed_graph import SignedGraph  # noqa: E402


def graph_from_edges(edges, n=None, labels=None) -> SignedGraph:
    """Build a SignedGraph from (u, v, w) triples."""
    u, v, w = (np.array(col) for col in zip(*edges))
    n = int(max(u.max(), v.max()) + 1) if n is None else n
    return SignedGraph.from_edges(n, u, v, w, labels)


def ring_with_chords(rng, n, chord_prob=0.3, negative_prob=0.3, weighted=True) -> SignedGraph:
    """Connected random signed graph: an n-cycle (or a single edge) plus random chords."""
    pairs = {(i, (i + 1) % n) if i < (i + 1) % n else ((i + 1) % n, i) for i in range(n)} if n > 2 else {(0, 1)}
    for a in range(n):
        for b in range(a + 2, n):
            if rng.random() < chord_prob:
                pairs.add((a, b))
    pairs = sorted(pairs)
    weights = rng.uniform(0.5, 2.0, len(pairs)) if weighted else np.ones(len(pairs))
    signs = np.where(rng.random(len(pairs)) < negative_prob, -1.0, 1.0)
    u, v = (np.array(col) for col in zip(*pairs))
    return SignedGraph.from_edges(n, u, v, weights * signs)


@pytest.fixture
def make_graph():
    return graph_from_edges


@pytest.fixture
def random_graph():
    return ring_with_chords


@pytest.fixture
def two_node_positive():
    return graph_from_edges([(0, 1, 1.0)])


@pytest.fixture
def two_node_negative():
    return graph_from_edges([(0, 1, -1.0)])


@pytest.fixture
def signed_path():
    """a -(+1)- b -(-1)- c"""
    return graph_from_edges([(0, 1, 1.0), (1, 2, -1.0)], labels=("a", "b", "c"))


@pytest.fixture
def positive_triangle():
    return graph_from_edges([(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)])


@pytest.fixture
def unbalanced_triangle():
    return graph_from_edges([(0, 1, 1.0), (1, 2, 1.0), (0, 2, -1.0)])


@pytest.fixture
def all_positive_graph():
    return ring_with_chords(np.random.default_rng(11), 12, negative_prob=0.0)


@pytest.fixture
def mixed_graph():
    return ring_with_chords(np.random.default_rng(5), 15, chord_prob=0.35, negative_prob=0.35)

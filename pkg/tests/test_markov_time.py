"""
Test Markov-Time Selection Module
=================================
Tests for grid scoring on the inner validation split.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.analysis.edge_split import split_edges  # noqa: E402
from src.analysis.markov_time import best_markov_time, score_markov_times, select_markov_time  # noqa: E402
from src.data_collection.synthetic_graphs import SyntheticSpec, generate_synthetic  # noqa: E402
from src.utils.exceptions import InvalidInputError  # noqa: E402


@pytest.fixture(scope="module")
def outer_split():
    graph, _ = generate_synthetic(SyntheticSpec(seed=5))
    return graph, split_edges(graph, 0.2, seed=5)


def _oracle(inner):
    n = inner.residual.node_count
    S = np.zeros((n, n))
    for (u, v), w in zip(inner.removed_pairs, inner.removed_weights):
        S[u, v] = S[v, u] = np.sign(w)
    return S


def test_singleton_grid_skips_evaluation(outer_split):
    """Test that a one-point grid is returned without scoring."""
    graph, manifest = outer_split

    def never_called(inner, t):
        raise AssertionError("similarity should not be evaluated")

    assert select_markov_time(graph, manifest, grid=[4.0], similarity_fn=never_called) == 4.0
    print("✓ Singleton grid returned directly")


def test_oracle_time_is_selected(outer_split):
    """Test that the grid point with a perfect similarity wins."""
    graph, manifest = outer_split
    rng = np.random.default_rng(0)

    def similarity_fn(inner, t):
        if t == 2.0:
            return _oracle(inner)
        return rng.random((inner.residual.node_count,) * 2)

    assert select_markov_time(graph, manifest, grid=[1.0, 2.0, 5.0], similarity_fn=similarity_fn) == 2.0
    print("✓ Oracle Markov time selected")


def test_ties_go_to_smallest_time(outer_split):
    """Test that equal scores select the smallest Markov time."""
    graph, manifest = outer_split
    scores = score_markov_times(manifest, grid=[5.0, 1.0, 3.0], similarity_fn=lambda inner, t: _oracle(inner))
    assert set(scores.values()) == {1.0}
    assert select_markov_time(graph, manifest, grid=[5.0, 1.0, 3.0], similarity_fn=lambda inner, t: _oracle(inner)) == 1.0
    print("✓ Ties resolved to the smallest t")


def test_best_markov_time():
    """Test argmax with ties and undefined scores."""
    assert best_markov_time({1.0: 0.2, 2.0: 0.5, 3.0: 0.5}) == 2.0
    assert best_markov_time({1.0: float("nan"), 2.0: 0.1}) == 2.0
    assert best_markov_time({3.0: float("nan"), 2.0: float("nan")}) == 2.0
    print("✓ best_markov_time handles ties and NaN")


def test_embedding_scores(outer_split):
    """Test real embedding scores on a two-point grid."""
    _, manifest = outer_split
    scores = score_markov_times(manifest, grid=[1.0, 10.0], k=10)
    assert list(scores) == [1.0, 10.0]
    assert all(0.0 <= s <= 1.0 for s in scores.values())
    unsigned = score_markov_times(manifest, grid=[1.0, 10.0], k=10, signed=False)
    assert all(0.0 <= s <= 1.0 for s in unsigned.values())
    print(f"✓ Validation scores {scores}")


def test_invalid_requests(outer_split, mixed_graph):
    """Test empty grids and mismatched manifests."""
    graph, manifest = outer_split
    with pytest.raises(InvalidInputError):
        score_markov_times(manifest, grid=[])
    with pytest.raises(InvalidInputError):
        select_markov_time(graph, manifest, grid=[])
    with pytest.raises(InvalidInputError):
        select_markov_time(mixed_graph, manifest, grid=[1.0, 2.0])
    print("✓ Invalid selection requests rejected")


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

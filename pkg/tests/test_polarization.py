"""
Test Polarization Module
========================
Tests for node and graph polarization scores.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.analysis.polarization import (  # noqa: E402
    column_correlations,
    graph_polarization_profile,
    node_polarization,
)
from src.data_collection.synthetic_graphs import SyntheticSpec, generate_synthetic  # noqa: E402
from src.models.random_walk import TransitionField  # noqa: E402
from src.utils.exceptions import InvalidInputError  # noqa: E402


def test_all_positive_graph_is_fully_polarized(all_positive_graph):
    """Test Pol(u) = 1 for every node when no edge is negative."""
    report = node_polarization(all_positive_graph, 2.0)
    np.testing.assert_allclose(report.node_scores, 1.0, atol=1e-12)
    assert report.graph_score == pytest.approx(1.0, abs=1e-12)
    assert report.zero_variance_nodes == []
    print("✓ All-positive graph scores 1 everywhere")


def test_scores_bounded_and_mean(mixed_graph):
    """Test scores lie in [-1, 1] and the graph score is their mean."""
    report = node_polarization(mixed_graph, 1.5)
    assert np.all(np.abs(report.node_scores) <= 1.0)
    assert report.graph_score == pytest.approx(report.node_scores.mean())
    assert report.node_scores.size == mixed_graph.node_count
    print(f"✓ Pol(G) = {report.graph_score:.4f}")


def test_profile_matches_single_time(mixed_graph):
    """Test that a profile returns the same scores as single-time calls."""
    times = [0.5, 2.0, 10.0]
    profile = graph_polarization_profile(mixed_graph, times)
    for report, t in zip(profile, times):
        assert report.markov_time == t
        assert np.array_equal(report.node_scores, node_polarization(mixed_graph, t).node_scores)
    print("✓ Profile equals per-time evaluation")


def test_invalid_times(mixed_graph):
    """Test empty time lists and non-positive times."""
    with pytest.raises(InvalidInputError):
        graph_polarization_profile(mixed_graph, [])
    with pytest.raises(InvalidInputError):
        node_polarization(mixed_graph, 0.0)
    with pytest.raises(InvalidInputError):
        node_polarization(mixed_graph, -2.0)
    print("✓ Invalid Markov times rejected")


def test_permutation_equivariance(mixed_graph):
    """Test that relabeling nodes permutes the scores."""
    rng = np.random.default_rng(17)
    perm = rng.permutation(mixed_graph.node_count)
    u, v, w = mixed_graph.edge_arrays()
    inverse = np.argsort(perm)
    permuted = type(mixed_graph).from_edges(mixed_graph.node_count, inverse[u], inverse[v], w)

    original = node_polarization(mixed_graph, 3.0).node_scores
    shuffled = node_polarization(permuted, 3.0).node_scores
    np.testing.assert_allclose(shuffled[inverse], original, atol=1e-12)
    print("✓ Scores are permutation-equivariant")


def test_zero_variance_columns_score_zero():
    """Test that a constant column scores 0 and is flagged."""
    unsigned = TransitionField(np.array([[0.5, 0.2], [0.5, 0.8]]), 1.0, False, False)
    signed = TransitionField(np.array([[0.5, -0.2], [-0.5, 0.4]]), 1.0, True, False)
    scores, degenerate = column_correlations(unsigned, signed)
    assert scores[0] == 0.0
    assert degenerate.tolist() == [True, False]
    assert scores[1] == pytest.approx(1.0)
    print("✓ Zero-variance column scored 0")


def test_report_frame_sorted(mixed_graph):
    """Test the per-node table is sorted ascending by score."""
    report = node_polarization(mixed_graph, 1.0)
    frame = report.to_frame()
    assert list(frame.columns) == ["node_label", "score"]
    assert frame["score"].is_monotonic_increasing
    assert frame.iloc[0]["score"] == report.node_scores.min()
    assert report.summary()["nodes"] == mixed_graph.node_count
    print("✓ Report table sorted by score")


def test_polarized_beats_unpolarized():
    """Test Pol(G) of the polarized scheme exceeds the unpolarized one at t=10."""
    wins = 0
    for seed in range(10):
        polarized, _ = generate_synthetic(SyntheticSpec(seed=seed, scheme="polarized"))
        unpolarized, _ = generate_synthetic(SyntheticSpec(seed=seed, scheme="unpolarized"))
        wins += node_polarization(polarized, 10.0).graph_score > node_polarization(unpolarized, 10.0).graph_score
    assert wins >= 9, f"polarized won only {wins}/10"
    print(f"✓ Polarized scheme more polarized in {wins}/10 seeds")


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

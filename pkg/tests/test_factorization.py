"""
Test Factorization Module
=========================
Tests for the sign-aware low-rank factorization, similarity reconstruction
and embedding files.
"""

import sys
from pathlib import Path

import numpy as np
import pytest
from sklearn.metrics import roc_auc_score

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from config import EMBEDDING_PARAMS  # noqa: E402
from src.analysis.edge_split import split_edges  # noqa: E402
from src.analysis.link_prediction import embed_residual  # noqa: E402
from src.data_collection.synthetic_graphs import SyntheticSpec, generate_synthetic  # noqa: E402
from src.models.autocovariance import AutocovarianceMatrix, autocovariance  # noqa: E402
from src.models.factorization import (  # noqa: E402
    factorize,
    read_embedding,
    reconstruction_error,
    similarity,
    similarity_matrix,
    write_embedding,
)
from src.utils.exceptions import InvalidInputError  # noqa: E402


def _ordered_eigenvalues(R):
    lam = np.linalg.eigvalsh(R)
    return lam[np.argsort(-np.abs(lam), kind="stable")]


def test_full_rank_reconstructs(mixed_graph):
    """Test that k = n reproduces R."""
    r = autocovariance(mixed_graph, 2.0)
    e = factorize(r, mixed_graph.node_count)
    np.testing.assert_allclose(similarity_matrix(e), r.matrix, atol=1e-8)
    assert reconstruction_error(e, r) < 1e-8
    print("✓ Full-rank factorization reconstructs R")


def test_error_equals_discarded_spectrum(random_graph):
    """Test ||R - R_k||_F^2 = sum of discarded squared eigenvalues on 100 graphs."""
    rng = np.random.default_rng(7)
    for _ in range(100):
        g = random_graph(rng, 10, chord_prob=0.35, negative_prob=0.4)
        r = autocovariance(g, float(rng.uniform(0.5, 5.0)))
        lam = _ordered_eigenvalues(r.matrix)
        for k in range(1, 10):
            error = reconstruction_error(factorize(r, k), r)
            assert abs(error**2 - np.sum(lam[k:] ** 2)) < 1e-8
    print("✓ Reconstruction error matches the discarded spectrum")


def test_error_decreases_with_rank(mixed_graph):
    """Test that the reconstruction error is non-increasing in k."""
    r = autocovariance(mixed_graph, 1.0)
    errors = [reconstruction_error(factorize(r, k), r) for k in range(1, mixed_graph.node_count + 1)]
    assert all(b <= a + 1e-12 for a, b in zip(errors, errors[1:]))
    print("✓ Error non-increasing in k")


def test_eigenvalue_accounting_and_orthogonality(mixed_graph):
    """Test sum_i s_i ||U_i||^2 = sum of kept eigenvalues and U^T U diagonal."""
    r = autocovariance(mixed_graph, 1.5)
    k = 6
    e = factorize(r, k)
    lam = _ordered_eigenvalues(r.matrix)[:k]
    assert abs(np.sum(e.spectral_signs * np.sum(e.vectors**2, axis=0)) - lam.sum()) < 1e-8

    gram = e.vectors.T @ e.vectors
    np.testing.assert_allclose(gram - np.diag(np.diag(gram)), 0.0, atol=1e-8)
    np.testing.assert_allclose(np.diag(gram), np.abs(lam), atol=1e-8)
    print("✓ Spectral accounting and orthogonality")


def test_walk_autocovariance_is_positive_semidefinite(mixed_graph):
    """Test R = M^T W M has no materially negative eigenvalue (W is PSD)."""
    lam = np.linalg.eigvalsh(autocovariance(mixed_graph, 0.5).matrix)
    assert lam.min() > -1e-12 * np.abs(lam).max()
    print(f"✓ Smallest eigenvalue {lam.min():.2e}")


def test_indefinite_matrix_keeps_negative_signs():
    """Test the signed reconstruction on an indefinite symmetric matrix."""
    rng = np.random.default_rng(0)
    Q, _ = np.linalg.qr(rng.normal(size=(6, 6)))
    lam = np.array([3.0, -2.5, 1.0, -0.5, 0.2, 0.0])
    matrix = (Q * lam) @ Q.T
    r = AutocovarianceMatrix((matrix + matrix.T) / 2, 1.0, True)

    e = factorize(r, 2)
    np.testing.assert_array_equal(e.spectral_signs, [1.0, -1.0])
    expected = 3.0 * np.outer(Q[:, 0], Q[:, 0]) - 2.5 * np.outer(Q[:, 1], Q[:, 1])
    np.testing.assert_allclose(similarity_matrix(e), expected, atol=1e-10)

    full = factorize(r, 6)
    assert full.spectral_signs[-1] == 1.0
    np.testing.assert_allclose(similarity_matrix(full), r.matrix, atol=1e-10)
    print("✓ Negative eigenvalues keep their sign")


def test_sign_convention(mixed_graph):
    """Test that each column's largest-magnitude entry is positive."""
    e = factorize(autocovariance(mixed_graph, 1.0), 5)
    pivots = np.argmax(np.abs(e.vectors), axis=0)
    assert np.all(e.vectors[pivots, np.arange(e.dimension)] > 0)
    print("✓ Eigenvector signs fixed")


def test_similarity_symmetric_and_consistent(mixed_graph):
    """Test pairwise similarity against the matrix form."""
    e = factorize(autocovariance(mixed_graph, 1.0), 5)
    S = similarity_matrix(e)
    for u, v in [(0, 1), (2, 7), (4, 4), (14, 3)]:
        assert similarity(e, u, v) == similarity(e, v, u)
        assert similarity(e, u, v) == pytest.approx(S[u, v], abs=1e-12)
    with pytest.raises(InvalidInputError):
        similarity(e, 0, mixed_graph.node_count)
    print("✓ similarity() symmetric and consistent with the matrix")


def test_self_similarity_nonnegative_on_positive_graph(all_positive_graph):
    """Test similarity(u, u) >= 0 when every edge is positive."""
    e = factorize(autocovariance(all_positive_graph, 2.0), 4)
    assert np.all(np.diag(similarity_matrix(e)) >= -1e-12)
    print("✓ Self-similarity non-negative on an all-positive graph")


def test_sign_agnostic_variant(mixed_graph):
    """Test sign_aware=False ignores the spectral signs."""
    r = autocovariance(mixed_graph, 0.5)
    e = factorize(r, mixed_graph.node_count, sign_aware=False)
    np.testing.assert_array_equal(e.effective_signs, np.ones(e.dimension))
    np.testing.assert_allclose(similarity_matrix(e), e.vectors @ e.vectors.T, atol=1e-14)
    print("✓ Sign-agnostic factorization uses plain dot products")


def test_dimension_out_of_range(mixed_graph):
    """Test k < 1 and k > n."""
    r = autocovariance(mixed_graph, 1.0)
    for k in (0, mixed_graph.node_count + 1, 2.5):
        with pytest.raises(InvalidInputError):
            factorize(r, k)
    print("✓ Out-of-range k rejected")


def test_iterative_solver_agrees_with_dense(random_graph, monkeypatch):
    """Test that the ARPACK path reconstructs the same similarities."""
    g = random_graph(np.random.default_rng(31), 60, chord_prob=0.1)
    r = autocovariance(g, 1.0)
    dense = similarity_matrix(factorize(r, 5))
    monkeypatch.setitem(EMBEDDING_PARAMS, "dense_solver_max_nodes", 10)
    iterative = similarity_matrix(factorize(r, 5))
    np.testing.assert_allclose(iterative, dense, atol=1e-6)
    print("✓ Iterative and dense eigensolvers agree")


def test_block_consumer(mixed_graph):
    """Test streaming similarity blocks and the dense-size gate."""
    e = factorize(autocovariance(mixed_graph, 1.0), 3)
    dense = similarity_matrix(e)
    collected = np.empty_like(dense)

    def consumer(rows, block):
        collected[rows] = block

    assert similarity_matrix(e, consumer=consumer, block_size=4) is None
    np.testing.assert_array_equal(collected, dense)
    with pytest.raises(InvalidInputError):
        similarity_matrix(e, max_nodes=5)
    print("✓ Block consumer and dense gate")


def test_embedding_file_round_trip(tmp_path, mixed_graph):
    """Test that written embeddings reload with identical similarities."""
    e = factorize(autocovariance(mixed_graph, 1.0), 4)
    path = write_embedding(e, tmp_path / "embedding.txt", header=["pole-signed format 1"])
    loaded = read_embedding(path)
    assert loaded.dimension == 4 and loaded.markov_time == 1.0 and loaded.signed
    assert loaded.node_labels == tuple(str(x) for x in mixed_graph.node_labels)
    np.testing.assert_array_equal(loaded.vectors, e.vectors)
    np.testing.assert_array_equal(similarity_matrix(loaded), similarity_matrix(e))
    print("✓ Embedding file round-trips")


def test_malformed_embedding_file(tmp_path):
    """Test that inconsistent embedding files are rejected."""
    path = tmp_path / "bad.txt"
    path.write_text("3 2 1.0 1\n1 -1\na 0.1 0.2\nb 0.3 0.4\n", encoding="utf-8")
    with pytest.raises(InvalidInputError):
        read_embedding(path)
    path.write_text("not a header\n", encoding="utf-8")
    with pytest.raises(InvalidInputError):
        read_embedding(path)
    print("✓ Malformed embedding files rejected")


def test_polarized_similarity_separates_link_signs():
    """Test held-out positive > disconnected > held-out negative mean similarity."""
    ordered, separated = 0, 0
    for seed in range(20):
        graph, communities = generate_synthetic(SyntheticSpec(seed=seed))
        manifest = split_edges(graph, 0.2, seed=seed)
        S = similarity_matrix(embed_residual(manifest, 10.0, 40))

        n = graph.node_count
        iu, iv = np.triu_indices(n, k=1)
        linked = graph.abs_adjacency.toarray()[iu, iv] != 0
        disconnected = S[iu[~linked], iv[~linked]]
        same = communities[iu[~linked]] == communities[iv[~linked]]

        pos = np.array([S[u, v] for u, v in manifest.removed_positive])
        neg = np.array([S[u, v] for u, v in manifest.removed_negative])
        ordered += pos.mean() > disconnected.mean() > neg.mean()

        labels = np.concatenate([np.ones(neg.size), np.zeros(same.sum())])
        auc = roc_auc_score(labels, -np.concatenate([neg, disconnected[same]]))
        separated += auc > 0.9
    assert ordered >= 18, f"group means ordered in only {ordered}/20 seeds"
    assert separated >= 18, f"negatives separated in only {separated}/20 seeds"
    print(f"✓ Similarity ordering {ordered}/20, negative separation {separated}/20")


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

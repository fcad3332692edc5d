"""
Test Autocovariance Module
==========================
Tests for the signed and unsigned autocovariance matrices.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.models.autocovariance import autocovariance, autocovariance_from_transitions  # noqa: E402
from src.models.random_walk import continuous_transitions  # noqa: E402
from src.utils.exceptions import InvalidInputError  # noqa: E402


def test_two_node_zero_time(two_node_positive):
    """Test R(0) = [[.25, -.25], [-.25, .25]] on a single edge."""
    expected = np.array([[0.25, -0.25], [-0.25, 0.25]])
    np.testing.assert_allclose(autocovariance(two_node_positive, 0.0).matrix, expected, atol=1e-15)
    np.testing.assert_allclose(autocovariance(two_node_positive, 0, discrete=True).matrix, expected, atol=1e-15)
    print("✓ Two-node R(0) matches the closed form")


def test_exactly_symmetric(mixed_graph):
    """Test R == R^T bit for bit."""
    R = autocovariance(mixed_graph, 2.5).matrix
    assert np.array_equal(R, R.T)
    print("✓ R is exactly symmetric")


def test_unsigned_rows_sum_to_zero(mixed_graph):
    """Test that unsigned autocovariance rows sum to zero."""
    R = autocovariance(mixed_graph, 3.0, signed=False).matrix
    np.testing.assert_allclose(R.sum(axis=1), 0.0, atol=1e-8)
    print("✓ Unsigned rows sum to zero")


def test_all_positive_signed_equals_unsigned(all_positive_graph):
    """Test signed and unsigned autocovariance coincide without negative edges."""
    signed = autocovariance(all_positive_graph, 1.0)
    unsigned = autocovariance(all_positive_graph, 1.0, signed=False)
    np.testing.assert_array_equal(signed.matrix, unsigned.matrix)
    assert signed.signed and not unsigned.signed
    print("✓ All-positive graph: signed R == unsigned R")


def test_matches_explicit_weight_matrix(mixed_graph):
    """Test R against M^T W M with W = D/vol - d d^T / vol^2 built explicitly."""
    field = continuous_transitions(mixed_graph, 1.7)
    d, vol = mixed_graph.degrees, mixed_graph.volume
    W = np.diag(d) / vol - np.outer(d, d) / vol**2
    expected = field.matrix.T @ W @ field.matrix
    R = autocovariance_from_transitions(mixed_graph, field)
    np.testing.assert_allclose(R.matrix, expected, atol=1e-12)
    assert R.markov_time == 1.7
    assert R.node_labels == mixed_graph.node_labels
    print("✓ Matches the explicit M^T W M")


def test_discrete_requires_integer_time(mixed_graph):
    """Test that discrete mode rejects fractional times."""
    with pytest.raises(InvalidInputError):
        autocovariance(mixed_graph, 1.5, discrete=True)
    assert autocovariance(mixed_graph, 3, discrete=True).node_count == mixed_graph.node_count
    print("✓ Discrete autocovariance needs an integer time")


def test_tolerance_validated_in_both_modes(mixed_graph):
    """Test that tol <= 0 is rejected for the continuous and the discrete walk."""
    for discrete in (False, True):
        for tol in (0.0, -1e-9):
            with pytest.raises(InvalidInputError):
                autocovariance(mixed_graph, 1, tol=tol, discrete=discrete)
    print("✓ Non-positive tolerance rejected")


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

"""
Signed Autocovariance
=====================
Dynamic node similarity R(t) = M(t)^T W M(t) with the degree-based weight
matrix W = D / vol(G) - d d^T / vol(G)^2.

W is never materialized: with y = M^T d,

    R = (M^T D M) / vol - y y^T / vol^2

followed by R <- (R + R^T) / 2 so the result is exactly symmetric. The
unsigned version (|M| in place of M) is the autocovariance used by
random-walk embeddings on ordinary graphs; its rows sum to zero because
W 1 = 0 and |M| 1 = 1.
"""

import logging
from dataclasses import dataclass

import numpy as np

from src.models.random_walk import TransitionField, continuous_transitions, discrete_transitions
from src.preprocessing.signed_graph import SignedGraph
from src.utils.exceptions import InvalidInputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class AutocovarianceMatrix:
    """Symmetric similarity matrix R(t) over the graph's nodes."""

    matrix: np.ndarray
    markov_time: float
    signed: bool
    node_labels: tuple = ()

    @property
    def node_count(self) -> int:
        return self.matrix.shape[0]


def autocovariance_from_transitions(g: SignedGraph, field: TransitionField) -> AutocovarianceMatrix:
    """Assemble R from a precomputed transition field on `g`."""
    M = field.matrix
    d = g.degrees
    vol = g.volume
    y = M.T @ d
    R = (M.T @ (d[:, None] * M)) / vol - np.outer(y, y) / vol**2
    R = (R + R.T) / 2.0
    return AutocovarianceMatrix(R, field.markov_time, field.signed, g.node_labels)


def autocovariance(
    g: SignedGraph,
    t: float,
    signed: bool = True,
    tol: float | None = None,
    discrete: bool = False,
    max_nodes: int | None = None,
) -> AutocovarianceMatrix:
    """
    Signed (or unsigned) autocovariance at Markov time t.

    Args:
        g: Connected signed graph
        t: Markov time; must be an integer when `discrete` is set
        signed: Signed walk (A) or unsigned walk (|A|)
        tol: Taylor truncation tolerance for the continuous walk
        discrete: Use (D^-1 A)^t instead of the continuous exponential

    Raises:
        InvalidInputError: tol <= 0, invalid t, or n above the dense gate
    """
    if tol is not None and not tol > 0:
        raise InvalidInputError(f"Tolerance must be positive, got {tol}")
    if discrete:
        field = discrete_transitions(g, t, signed, max_nodes=max_nodes)
    else:
        field = continuous_transitions(g, t, signed, tol, max_nodes=max_nodes)
    logger.debug("Assembling %s autocovariance at t=%g", "signed" if signed else "unsigned", t)
    return autocovariance_from_transitions(g, field)

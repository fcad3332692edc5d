"""
Low-Rank Factorization of the Autocovariance
============================================
Node embeddings U (n x k) whose signed dot products reconstruct R(t).

The factorization accepts any symmetric matrix, so it keeps the k eigenpairs
of largest |lambda| and a spectral sign vector s = sign(lambda):

    R ~= sum_i s_i U_{:i} U_{:i}^T,   U = Q_k |Lambda_k|^(1/2)

This is the best rank-k symmetric approximation in Frobenius norm. With all
selected eigenvalues positive it is the usual U U^T factorization, which is
the case for a walk autocovariance: x^T W x is the variance of x under the
degree distribution, so M^T W M is positive semidefinite up to rounding.

Solvers:
- n <= 3,000: dense `scipy.linalg.eigh`
- otherwise: ARPACK `eigsh` (top-k by magnitude, tol 1e-10, fixed start vector)

Eigenvector signs are fixed so the largest-magnitude entry of every column
is positive, which makes embedding files byte-reproducible.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np
from scipy import linalg
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from config import DYNAMICS_PARAMS, EMBEDDING_PARAMS
from src.models.autocovariance import AutocovarianceMatrix
from src.utils.exceptions import InvalidInputError, NumericalError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Embedding:
    """
    Node vectors plus the spectral signs needed to reconstruct similarities.

    Args:
        vectors: n x k matrix U, columns by descending |eigenvalue|
        spectral_signs: +1/-1 per column
        markov_time: Markov time of the factorized autocovariance
        signed: Whether R came from the signed walk
        node_labels: External node identifiers
        sign_aware: False forces plain U U^T dot products
    """

    vectors: np.ndarray
    spectral_signs: np.ndarray
    markov_time: float
    signed: bool
    node_labels: tuple = ()
    sign_aware: bool = True

    @property
    def dimension(self) -> int:
        return self.vectors.shape[1]

    @property
    def node_count(self) -> int:
        return self.vectors.shape[0]

    @property
    def effective_signs(self) -> np.ndarray:
        return self.spectral_signs if self.sign_aware else np.ones_like(self.spectral_signs)


def _sign_convention(Q: np.ndarray) -> np.ndarray:
    """Flip each eigenvector so its largest-|entry| is positive."""
    pivots = np.argmax(np.abs(Q), axis=0)
    flips = np.sign(Q[pivots, np.arange(Q.shape[1])])
    flips[flips == 0] = 1.0
    return Q * flips


def _top_eigenpairs(R: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    n = R.shape[0]
    try:
        if n <= EMBEDDING_PARAMS["dense_solver_max_nodes"] or k >= n - 1:
            lam, Q = linalg.eigh(R)
        else:
            v0 = np.random.default_rng(EMBEDDING_PARAMS["eigsh_start_seed"]).uniform(-1, 1, n)
            lam, Q = eigsh(R, k=k, which="LM", tol=EMBEDDING_PARAMS["eigsh_tol"], v0=v0)
    except ArpackNoConvergence as e:
        raise NumericalError(f"Eigensolver did not converge for k={k}: {e}") from e
    except linalg.LinAlgError as e:
        raise NumericalError(f"Dense eigendecomposition failed: {e}") from e

    order = np.argsort(-np.abs(lam), kind="stable")[:k]
    return lam[order], Q[:, order]


def factorize(r: AutocovarianceMatrix, k: int, sign_aware: bool = True) -> Embedding:
    """
    Rank-k factorization of an autocovariance matrix.

    Args:
        r: Autocovariance matrix
        k: Embedding dimension, 1 <= k <= n
        sign_aware: Keep the spectral signs in similarity reconstruction

    Returns:
        Embedding with U = Q_k |Lambda_k|^(1/2)

    Raises:
        InvalidInputError: k out of range
        NumericalError: Eigensolver failure
    """
    n = r.node_count
    if int(k) != k or not 1 <= k <= n:
        raise InvalidInputError(f"Embedding dimension k={k} must be in [1, {n}]")
    k = int(k)

    lam, Q = _top_eigenpairs(r.matrix, k)
    if not np.all(np.isfinite(lam)):
        raise NumericalError("Eigensolver returned non-finite eigenvalues")
    Q = _sign_convention(Q)

    scale = np.abs(lam).max() if lam.size else 0.0
    zero = np.abs(lam) <= n * np.finfo(float).eps * scale
    signs = np.where(lam < 0, -1.0, 1.0)
    signs[zero] = 1.0

    U = Q * np.sqrt(np.abs(lam))
    logger.debug("Factorized n=%d k=%d: %d negative spectral signs", n, k, int(np.sum(signs < 0)))
    return Embedding(U, signs, r.markov_time, r.signed, r.node_labels, sign_aware)


def similarity(e: Embedding, u: int, v: int) -> float:
    """sum_i s_i U_ui U_vi; symmetric in (u, v)."""
    for node in (u, v):
        if not 0 <= node < e.node_count:
            raise InvalidInputError(f"Node {node} out of range for n={e.node_count}")
    return float(np.dot(e.vectors[u] * e.effective_signs, e.vectors[v]))


def similarity_matrix(
    e: Embedding,
    consumer: Callable[[np.ndarray, np.ndarray], None] | None = None,
    max_nodes: int | None = None,
    block_size: int | None = None,
) -> np.ndarray | None:
    """
    Reconstructed similarity for every pair, computed in row blocks.

    Args:
        e: Embedding
        consumer: Called as consumer(rows, S[rows, :]) per block; when given,
            nothing is materialized and None is returned
        max_nodes: Dense-size gate (default: the dynamics gate)
        block_size: Rows per block

    Raises:
        InvalidInputError: n above the gate and no consumer supplied
    """
    max_nodes = DYNAMICS_PARAMS["max_dense_nodes"] if max_nodes is None else max_nodes
    block_size = EMBEDDING_PARAMS["similarity_block_size"] if block_size is None else block_size
    n = e.node_count
    if consumer is None and n > max_nodes:
        raise InvalidInputError(
            f"Similarity matrix for n={n} exceeds the {max_nodes}-node gate; supply a block consumer"
        )

    weighted = e.vectors * e.effective_signs
    S = None if consumer is not None else np.empty((n, n))
    for start in range(0, n, block_size):
        rows = np.arange(start, min(start + block_size, n))
        block = weighted[rows] @ e.vectors.T
        if consumer is not None:
            consumer(rows, block)
        else:
            S[rows] = block
    return S


def reconstruction_error(e: Embedding, r: AutocovarianceMatrix) -> float:
    """Frobenius norm of R minus the rank-k reconstruction."""
    return float(np.linalg.norm(r.matrix - similarity_matrix(e), "fro"))


# =============================================================================
# EMBEDDING FILES
# =============================================================================

def format_embedding(e: Embedding) -> str:
    """
    Text form: `n k t signed`, then the spectral signs, then `label U_1 ... U_k`.
    """
    lines = [f"{e.node_count} {e.dimension} {e.markov_time:.17g} {int(e.signed)}"]
    lines.append(" ".join(str(int(s)) for s in e.spectral_signs))
    labels = e.node_labels or tuple(range(e.node_count))
    for label, row in zip(labels, e.vectors):
        if len(str(label).split()) != 1:
            raise InvalidInputError(f"Label '{label}' cannot be written to an embedding file")
        lines.append(" ".join([str(label)] + [f"{x:.17g}" for x in row]))
    return "\n".join(lines) + "\n"


def write_embedding(e: Embedding, path: Path | str, header: Sequence[str] = ()) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for line in header:
            f.write(f"# {line}\n")
        f.write(format_embedding(e))
    return path


def read_embedding(path: Path | str) -> Embedding:
    """Load an embedding file; `#` lines are skipped. Labels come back as strings."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            rows = [line.split() for line in f if line.strip() and not line.startswith("#")]
    except OSError as e:
        raise InvalidInputError(f"Cannot read embedding {path}: {e}") from e

    try:
        n, k = int(rows[0][0]), int(rows[0][1])
        markov_time = float(rows[0][2])
        signed = bool(int(rows[0][3]))
        signs = np.array([float(s) for s in rows[1]])
        body = rows[2:]
        labels = tuple(row[0] for row in body)
        vectors = np.array([[float(x) for x in row[1:]] for row in body]).reshape(len(body), -1)
    except (IndexError, ValueError) as e:
        raise InvalidInputError(f"Malformed embedding file {path}: {e}") from e

    if vectors.shape != (n, k) or signs.size != k:
        raise InvalidInputError(
            f"Embedding file {path} declares n={n} k={k} but holds {vectors.shape} vectors"
        )
    return Embedding(vectors, signs, markov_time, signed, labels)

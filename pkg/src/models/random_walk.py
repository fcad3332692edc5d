"""
Signed Random-Walk Dynamics
===========================
Signed and unsigned random-walk transition matrices on a SignedGraph.

A walk <w_0 ... w_t> has probability prod |A|_{w w'} / d_w and sign
sign(prod A_{w w'}) ("an enemy of my enemy is my friend"). Summing
sign * probability over all length-t walks from u to v gives M_uv(t):

    discrete:    M(t) = (D^-1 A)^t
    continuous:  M(t) = exp(-(I - D^-1 A) t) = e^-t exp(t P)

The unsigned version |M|(t) substitutes |A| for A. Matrices are indexed
(from, to): `field.matrix[u, v]` is the walk from u to v, so column u,
`field.matrix[:, u]`, collects the transitions into u.

The continuous exponential is a truncated Taylor series applied to blocks of
columns with sparse products: column j is sum_i w_i P^i e_j with Poisson
weights w_i = e^-t t^i / i!. Since every row of |P| sums to 1, ||P x||_inf
<= ||x||_inf, so the neglected tail is bounded entrywise by the Poisson
survival function, which picks the truncation order.
"""

import logging
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np
import scipy.sparse as sp
from joblib import Parallel, delayed
from scipy.stats import poisson

from config import DYNAMICS_PARAMS
from src.preprocessing.signed_graph import SignedGraph
from src.utils.exceptions import InvalidInputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TransitionField:
    """Transition matrix M(t) (signed) or |M|(t) (unsigned), indexed (from, to)."""

    matrix: np.ndarray
    markov_time: float
    signed: bool
    discrete: bool

    def entry(self, source: int, target: int) -> float:
        return float(self.matrix[source, target])

    def into(self, node: int) -> np.ndarray:
        """Column M_{:node}: transitions from every node into `node`."""
        return self.matrix[:, node]

    def out_of(self, node: int) -> np.ndarray:
        return self.matrix[node, :]


@dataclass(frozen=True)
class Walk:
    nodes: tuple[int, ...]
    probability: float
    sign: int

    @property
    def length(self) -> int:
        return len(self.nodes) - 1

    @property
    def signed_probability(self) -> float:
        return self.sign * self.probability


def transition_operator(g: SignedGraph, signed: bool = True) -> sp.csr_matrix:
    """One-step operator P = D^-1 A (signed) or D^-1 |A| (unsigned)."""
    A = g.adjacency if signed else g.abs_adjacency
    return (sp.diags(1.0 / g.degrees) @ A).tocsr()


def _check_dense_size(g: SignedGraph, max_nodes: int | None):
    max_nodes = DYNAMICS_PARAMS["max_dense_nodes"] if max_nodes is None else max_nodes
    if g.node_count > max_nodes:
        raise InvalidInputError(
            f"Dense transition matrix for n={g.node_count} exceeds the {max_nodes}-node gate; "
            "use iter_transition_columns to stream columns instead"
        )


def discrete_transitions(
    g: SignedGraph, t: int, signed: bool = True, max_nodes: int | None = None
) -> TransitionField:
    """Exact t-th power of the one-step operator; t = 0 gives the identity."""
    if int(t) != t or t < 0:
        raise InvalidInputError(f"Discrete Markov time must be a non-negative integer, got {t}")
    _check_dense_size(g, max_nodes)
    P = transition_operator(g, signed)
    X = np.eye(g.node_count)
    for _ in range(int(t)):
        X = P @ X
    return TransitionField(np.asarray(X), float(t), signed, True)


def taylor_order(t: float, tol: float) -> int:
    """Smallest J with e^-t sum_{j>J} t^j / j! < tol."""
    if t == 0:
        return 0
    order = max(int(poisson.isf(tol, t)), 0)
    while poisson.sf(order, t) >= tol:
        order += 1
    while order > 0 and poisson.sf(order - 1, t) < tol:
        order -= 1
    return order


def taylor_weights(t: float, tol: float) -> np.ndarray:
    """Poisson weights e^-t t^i / i! for i = 0..J."""
    if t == 0:
        return np.ones(1)
    return poisson.pmf(np.arange(taylor_order(t, tol) + 1), t)


def _validate_times(times: Sequence[float], tol: float):
    if not tol > 0:
        raise InvalidInputError(f"Tolerance must be positive, got {tol}")
    for t in times:
        if not np.isfinite(t) or t < 0:
            raise InvalidInputError(f"Markov time must be a non-negative real, got {t}")


def _taylor_block(P: sp.csr_matrix, columns: np.ndarray, weight_sets: list[np.ndarray]) -> list[np.ndarray]:
    n = P.shape[0]
    Y = np.zeros((n, columns.size))
    Y[columns, np.arange(columns.size)] = 1.0
    sums = [w[0] * Y for w in weight_sets]
    for i in range(1, max(w.size for w in weight_sets)):
        Y = P @ Y
        for acc, w in zip(sums, weight_sets):
            if i < w.size:
                acc += w[i] * Y
    return sums


def _column_blocks(n: int, block_size: int) -> list[np.ndarray]:
    return [np.arange(start, min(start + block_size, n)) for start in range(0, n, block_size)]


def continuous_transitions_profile(
    g: SignedGraph,
    times: Sequence[float],
    signed: bool = True,
    tol: float | None = None,
    max_nodes: int | None = None,
    n_jobs: int | None = None,
    block_size: int | None = None,
) -> list[TransitionField]:
    """
    Continuous transitions at several Markov times in one pass over P^i.

    Each time keeps its own truncation order and left-to-right summation, so
    every returned field is bit-identical to a single-time call, whatever
    `n_jobs` and `block_size` are.
    """
    tol = DYNAMICS_PARAMS["tol"] if tol is None else tol
    n_jobs = DYNAMICS_PARAMS["n_jobs"] if n_jobs is None else n_jobs
    block_size = DYNAMICS_PARAMS["column_block_size"] if block_size is None else block_size
    _validate_times(times, tol)
    _check_dense_size(g, max_nodes)

    P = transition_operator(g, signed)
    weight_sets = [taylor_weights(float(t), tol) for t in times]
    logger.debug("Taylor orders %s for times %s", [w.size - 1 for w in weight_sets], list(times))

    blocks = _column_blocks(g.node_count, block_size)
    results = Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(_taylor_block)(P, block, weight_sets) for block in blocks
    )

    matrices = [np.empty((g.node_count, g.node_count)) for _ in times]
    for block, sums in zip(blocks, results):
        for M, block_sum in zip(matrices, sums):
            M[:, block] = block_sum
    return [
        TransitionField(M, float(t), signed, False) for M, t in zip(matrices, times)
    ]


def continuous_transitions(
    g: SignedGraph,
    t: float,
    signed: bool = True,
    tol: float | None = None,
    max_nodes: int | None = None,
    n_jobs: int | None = None,
) -> TransitionField:
    """
    Continuous-time transitions exp(-(I - D^-1 A) t).

    Args:
        g: Signed graph
        t: Markov time (>= 0)
        signed: Use A (signed walk) or |A| (unsigned walk)
        tol: Bound on the neglected Taylor tail (default 1e-9)
        max_nodes: Dense-size gate (default 20,000)
        n_jobs: Column-block workers; output does not depend on it

    Raises:
        InvalidInputError: tol <= 0, negative t, or n above the gate
    """
    return continuous_transitions_profile(g, [t], signed, tol, max_nodes, n_jobs)[0]


def iter_transition_columns(
    g: SignedGraph,
    t: float,
    signed: bool = True,
    tol: float | None = None,
    block_size: int | None = None,
) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Stream (columns, M[:, columns]) blocks without the dense-size gate."""
    tol = DYNAMICS_PARAMS["tol"] if tol is None else tol
    block_size = DYNAMICS_PARAMS["column_block_size"] if block_size is None else block_size
    _validate_times([t], tol)
    P = transition_operator(g, signed)
    weights = [taylor_weights(float(t), tol)]
    for block in _column_blocks(g.node_count, block_size):
        yield block, _taylor_block(P, block, weights)[0]


def _check_walk_request(g: SignedGraph, t: int, max_length: int | None):
    max_length = DYNAMICS_PARAMS["max_walk_length"] if max_length is None else max_length
    if int(t) != t or t < 0:
        raise InvalidInputError(f"Walk length must be a non-negative integer, got {t}")
    if t > max_length:
        raise InvalidInputError(f"Walk length {t} exceeds the enumeration cap {max_length}")


def _walks_from(g: SignedGraph, source: int, t: int) -> Iterator[Walk]:
    A = g.adjacency
    d = g.degrees
    stack = [((source,), 1.0, 1)]
    while stack:
        nodes, prob, sign = stack.pop()
        if len(nodes) == t + 1:
            yield Walk(nodes, prob, sign)
            continue
        w = nodes[-1]
        start, end = A.indptr[w], A.indptr[w + 1]
        # reversed so walks come out in lexicographic node order
        for x, a in zip(A.indices[start:end][::-1], A.data[start:end][::-1]):
            stack.append((nodes + (int(x),), prob * abs(a) / d[w], sign if a > 0 else -sign))


def enumerate_walks(
    g: SignedGraph, u: int, v: int, t: int, max_length: int | None = None
) -> list[Walk]:
    """
    All length-t walks from u to v (exponential cost, verification only).

    Raises:
        InvalidInputError: t above the cap, or node out of range
    """
    _check_walk_request(g, t, max_length)
    for node in (u, v):
        if not 0 <= node < g.node_count:
            raise InvalidInputError(f"Node {node} out of range for n={g.node_count}")
    return [walk for walk in _walks_from(g, u, int(t)) if walk.nodes[-1] == v]


def walk_enumeration_matrix(g: SignedGraph, t: int, max_length: int | None = None) -> np.ndarray:
    """Oracle matrix [u, v] = sum of sign * probability over all length-t walks u -> v."""
    _check_walk_request(g, t, max_length)
    oracle = np.zeros((g.node_count, g.node_count))
    for u in range(g.node_count):
        for walk in _walks_from(g, u, int(t)):
            oracle[u, walk.nodes[-1]] += walk.signed_probability
    return oracle

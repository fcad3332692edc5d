"""
Pair Ranking and precision@k
============================
Ranks every unordered pair that is not linked in the residual graph by a
similarity score and measures how many held-out links land at the top
(positive links) and at the bottom (negative links) of the ranking.

Order: score descending, ties by (u, v) ascending with u < v. At desk scale
(n <= 5,000) the whole candidate universe is sorted; above that only the
top-K and bottom-K pairs are kept, merged block by block (K = the largest
count any decile needs). Both paths produce the same head and tail.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
import pandas as pd

from config import EVALUATION_PARAMS, EMBEDDING_PARAMS
from src.analysis.edge_split import SplitManifest
from src.models.factorization import Embedding
from src.utils.exceptions import InvalidInputError

logger = logging.getLogger(__name__)

SimilaritySource = np.ndarray | Embedding | Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class PairRanking:
    """
    Head (best-scored) and tail (worst-scored) of a ranking over candidate pairs.

    When `complete` is set, head and tail are the same full ranking.
    """

    head_u: np.ndarray
    head_v: np.ndarray
    head_scores: np.ndarray
    tail_u: np.ndarray
    tail_v: np.ndarray
    tail_scores: np.ndarray
    candidate_count: int
    complete: bool

    def __len__(self) -> int:
        return self.candidate_count

    def top(self, k: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        if k > self.head_u.size:
            raise InvalidInputError(f"Ranking keeps only the top {self.head_u.size} pairs, asked for {k}")
        return self.head_u[:k], self.head_v[:k], self.head_scores[:k]

    def bottom(self, k: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Last k pairs, in ranking order (the final entry is ranked last)."""
        if k > self.tail_u.size:
            raise InvalidInputError(f"Ranking keeps only the bottom {self.tail_u.size} pairs, asked for {k}")
        start = self.tail_u.size - k
        return self.tail_u[start:], self.tail_v[start:], self.tail_scores[start:]


def _row_scorer(sim: SimilaritySource) -> Callable[[np.ndarray], np.ndarray]:
    if isinstance(sim, Embedding):
        weighted = sim.vectors * sim.effective_signs
        return lambda rows: weighted[rows] @ sim.vectors.T
    if callable(sim):
        return sim
    S = np.asarray(sim)
    return lambda rows: S[rows]


def _ranking_order(u: np.ndarray, v: np.ndarray, s: np.ndarray) -> np.ndarray:
    return np.lexsort((v, u, -s))


def candidate_blocks(manifest: SplitManifest, sim: SimilaritySource, block_size: int | None = None):
    """Yield (u, v, score) arrays of candidate pairs, one row block at a time."""
    block_size = EMBEDDING_PARAMS["similarity_block_size"] if block_size is None else block_size
    score_rows = _row_scorer(sim)
    linked_matrix = manifest.residual.abs_adjacency
    n = manifest.residual.node_count
    cols = np.arange(n)
    for start in range(0, n - 1, block_size):
        rows = np.arange(start, min(start + block_size, n))
        scores = np.asarray(score_rows(rows), dtype=np.float64)
        linked = linked_matrix[rows].toarray() != 0
        mask = (cols[None, :] > rows[:, None]) & ~linked
        r, c = np.nonzero(mask)
        yield rows[r], c, scores[r, c]


def _keep(u, v, s, k: int, head: bool):
    order = _ranking_order(u, v, s)
    order = order[:k] if head else order[max(order.size - k, 0):]
    return u[order], v[order], s[order]


def rank_pairs(
    sim: SimilaritySource,
    manifest: SplitManifest,
    keep: int | None = None,
    full_sort_max_nodes: int | None = None,
) -> PairRanking:
    """
    Rank the candidate pairs of a split.

    Args:
        sim: Dense n x n scores, an Embedding, or a callable rows -> scores[rows, :]
        manifest: Split defining the residual graph
        keep: Pairs kept at each end in large mode (default: max held-out count per sign)
        full_sort_max_nodes: Largest n that gets a full sort (default 5,000)
    """
    full_sort_max_nodes = (
        EVALUATION_PARAMS["full_sort_max_nodes"] if full_sort_max_nodes is None else full_sort_max_nodes
    )
    n = manifest.residual.node_count

    if n <= full_sort_max_nodes:
        blocks = list(candidate_blocks(manifest, sim))
        u, v, s = (np.concatenate([b[i] for b in blocks]) for i in range(3))
        order = _ranking_order(u, v, s)
        u, v, s = u[order], v[order], s[order]
        return PairRanking(u, v, s, u, v, s, int(s.size), True)

    keep = keep or max(len(manifest.removed_positive), len(manifest.removed_negative), 1)
    empty = (np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64), np.empty(0))
    head, tail = empty, empty
    total = 0
    for bu, bv, bs in candidate_blocks(manifest, sim):
        total += bs.size
        head = _keep(*(np.concatenate(x) for x in zip(head, (bu, bv, bs))), keep, head=True)
        tail = _keep(*(np.concatenate(x) for x in zip(tail, (bu, bv, bs))), keep, head=False)
    logger.debug("Ranked %d candidates keeping %d at each end", total, keep)
    return PairRanking(*head, *tail, total, False)


@dataclass(frozen=True, eq=False)
class EvaluationReport:
    """
    precision@k curves keyed by decile ratio; a curve is None when the split
    held out no link of that sign.
    """

    precision_positive: dict[float, float] | None
    precision_negative: dict[float, float] | None
    method_tag: str
    counts_positive: dict[float, int] | None = None
    counts_negative: dict[float, int] | None = None
    pair_features: pd.DataFrame | None = None
    metadata: dict = field(default_factory=dict)

    def mean_precision(self, sign: str) -> float | None:
        curve = self.precision_positive if sign == "positive" else self.precision_negative
        return None if curve is None else float(np.mean(list(curve.values())))

    def to_dict(self) -> dict:
        def curve(c):
            return None if c is None else {f"{r:.1f}": p for r, p in c.items()}

        return {
            "method": self.method_tag,
            "precision_positive": curve(self.precision_positive),
            "precision_negative": curve(self.precision_negative),
            "metadata": self.metadata,
        }

    def to_frame(self) -> pd.DataFrame:
        """One row per decile per sign: sign, k_ratio, k, precision."""
        rows = []
        for sign, curve, counts in (
            ("positive", self.precision_positive, self.counts_positive),
            ("negative", self.precision_negative, self.counts_negative),
        ):
            for ratio in EVALUATION_PARAMS["deciles"]:
                rows.append({
                    "method": self.method_tag,
                    "sign": sign,
                    "k_ratio": ratio,
                    "k": None if counts is None else counts[ratio],
                    "precision": None if curve is None else curve[ratio],
                })
        return pd.DataFrame(rows)


def decile_counts(total: int, deciles: Sequence[float] | None = None) -> dict[float, int]:
    """k = ceil(r * total) per decile ratio r, in exact integer arithmetic."""
    deciles = EVALUATION_PARAMS["deciles"] if deciles is None else deciles
    return {r: -(-round(r * 10) * total // 10) for r in deciles}


def _curve(pairs_u, pairs_v, removed: dict, n: int, counts: dict[float, int]) -> dict[float, float]:
    truth = np.array([u * n + v for u, v in removed], dtype=np.int64)
    hits = np.cumsum(np.isin(pairs_u * n + pairs_v, truth))
    return {r: float(hits[k - 1]) / k for r, k in counts.items()}


def precision_at_k(
    ranking: PairRanking, manifest: SplitManifest, method_tag: str = "pole"
) -> EvaluationReport:
    """
    precision@k for removed positive links (top of the ranking) and removed
    negative links (bottom of the ranking), at the ten deciles of P and N.
    """
    n = manifest.residual.node_count
    pos, neg = manifest.removed_positive, manifest.removed_negative

    precision_pos = counts_pos = None
    if pos:
        counts_pos = decile_counts(len(pos))
        u, v, _ = ranking.top(len(pos))
        precision_pos = _curve(u, v, pos, n, counts_pos)

    precision_neg = counts_neg = None
    if neg:
        counts_neg = decile_counts(len(neg))
        u, v, _ = ranking.bottom(len(neg))
        # walk the tail from the very last pair upwards
        precision_neg = _curve(u[::-1], v[::-1], neg, n, counts_neg)

    if precision_neg is None:
        logger.warning("No negative links held out; negative precision is undefined")
    return EvaluationReport(
        precision_positive=precision_pos,
        precision_negative=precision_neg,
        method_tag=method_tag,
        counts_positive=counts_pos,
        counts_negative=counts_neg,
        metadata={"split": manifest.summary()},
    )

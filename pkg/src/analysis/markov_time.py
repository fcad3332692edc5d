"""
Markov-Time Selection
=====================
Picks the Markov time t from a grid (default {10^0.0, 10^0.1, ..., 10^1.0})
by link-prediction performance on an inner validation split of the residual
graph, so the held-out test links are never touched.

Score of a grid point: mean precision over the ten deciles, averaged over
the positive and negative curves that are defined. Ties go to the smaller t.
"""

import logging
from typing import Callable, Sequence

import numpy as np
from tqdm import tqdm

from config import EVALUATION_PARAMS
from src.analysis.edge_split import SplitManifest, inner_split
from src.analysis.link_prediction import signed_link_prediction, unsigned_link_prediction
from src.analysis.ranking import EvaluationReport, SimilaritySource, precision_at_k, rank_pairs
from src.preprocessing.signed_graph import SignedGraph
from src.utils.exceptions import InvalidInputError

logger = logging.getLogger(__name__)


def validation_score(report: EvaluationReport) -> float:
    means = [m for m in (report.mean_precision("positive"), report.mean_precision("negative")) if m is not None]
    return float(np.mean(means)) if means else float("nan")


def score_markov_times(
    manifest: SplitManifest,
    grid: Sequence[float] | None = None,
    k: int | None = None,
    seed: int = 0,
    signed: bool = True,
    tol: float | None = None,
    similarity_fn: Callable[[SplitManifest, float], SimilaritySource] | None = None,
    show_progress: bool = False,
) -> dict[float, float]:
    """
    Validation score of every grid point on one inner split.

    Args:
        manifest: Outer split; its residual graph is split again
        grid: Markov times to try
        k: Embedding dimension
        seed: Per-command seed ("inner-split" stream)
        signed: Signed POLE ranking, or unsigned ranking of |A|
        similarity_fn: Replaces the embedding with any similarity source
            built from (inner manifest, t)
        show_progress: Show a tqdm bar over the grid

    Raises:
        InvalidInputError: Empty grid
        InfeasibleOperationError: Inner split impossible (graph too tree-like)
    """
    grid = list(EVALUATION_PARAMS["markov_time_grid"] if grid is None else grid)
    if not grid:
        raise InvalidInputError("Markov-time grid is empty")

    inner = inner_split(manifest, seed)
    scores = {}
    for t in tqdm(grid, desc="Markov times", disable=not show_progress):
        if similarity_fn is not None:
            report = precision_at_k(rank_pairs(similarity_fn(inner, t), inner), inner)
        elif signed:
            report = signed_link_prediction(inner, t, k, tol)
        else:
            report = unsigned_link_prediction(inner, t, k, tol)
        scores[float(t)] = validation_score(report)
        logger.debug("t=%g validation score %.4f", t, scores[float(t)])
    return scores


def select_markov_time(
    g: SignedGraph,
    manifest: SplitManifest,
    grid: Sequence[float] | None = None,
    k: int | None = None,
    seed: int = 0,
    signed: bool = True,
    tol: float | None = None,
    similarity_fn: Callable[[SplitManifest, float], SimilaritySource] | None = None,
    show_progress: bool = False,
) -> float:
    """
    Best Markov time on the inner validation split; a singleton grid is
    returned as is, without any evaluation.
    """
    grid = list(EVALUATION_PARAMS["markov_time_grid"] if grid is None else grid)
    if not grid:
        raise InvalidInputError("Markov-time grid is empty")
    if manifest.original is not g:
        raise InvalidInputError("Split manifest was not built from this graph")
    if len(grid) == 1:
        return float(grid[0])

    scores = score_markov_times(manifest, grid, k, seed, signed, tol, similarity_fn, show_progress)
    chosen = best_markov_time(scores)
    logger.info("Selected %s Markov time t=%g (score %.4f)", "signed" if signed else "unsigned", chosen, scores[chosen])
    return chosen


def best_markov_time(scores: dict[float, float]) -> float:
    """Argmax of the validation scores; ties (and all-NaN grids) go to the smallest t."""
    finite = {t: s for t, s in scores.items() if np.isfinite(s)}
    if not finite:
        return min(scores)
    best = max(finite.values())
    return min(t for t, s in finite.items() if s == best)

"""
Signed Link Prediction
======================
Embeds the residual graph of a split and ranks the candidate pairs.

Modes:
- signed-only: rank by the reconstructed signed autocovariance similarity;
  the top of the ranking predicts positive links, the bottom negative links
- unsigned: the same with the unsigned autocovariance of |A| (every held-out
  link counts as positive), used to tune the unsigned Markov time
- combined: two logistic classifiers on (signed_sim, unsigned_sim), one for
  positive-vs-disconnected and one for negative-vs-disconnected pairs

The combined mode also returns a per-pair feature table for scatter and
decision-boundary plots.
"""

import logging
from dataclasses import replace

import numpy as np
import pandas as pd

from config import EVALUATION_PARAMS, EMBEDDING_PARAMS
from src.analysis.edge_split import SplitManifest
from src.analysis.ranking import EvaluationReport, precision_at_k, rank_pairs
from src.models.autocovariance import autocovariance
from src.models.factorization import Embedding, factorize
from src.models.logistic_combiner import LogisticModel, fit_logistic
from src.preprocessing.signed_graph import SignedGraph
from src.utils.exceptions import InvalidInputError
from src.utils.seeding import stream_rng

logger = logging.getLogger(__name__)


def embed_residual(
    manifest: SplitManifest, t: float, k: int | None = None, signed: bool = True, tol: float | None = None
) -> Embedding:
    k = EMBEDDING_PARAMS["dimension"] if k is None else k
    residual = manifest.residual if signed else manifest.residual.absolute()
    return factorize(autocovariance(residual, t, signed=signed, tol=tol), k)


def pair_similarities(e: Embedding, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Vectorized similarity(e, u_i, v_i)."""
    return np.einsum("ij,ij->i", e.vectors[u] * e.effective_signs, e.vectors[v])


def _check_manifest(g: SignedGraph, manifest: SplitManifest):
    if manifest.original is not g:
        raise InvalidInputError("Split manifest was not built from this graph")


def signed_link_prediction(
    manifest: SplitManifest, t: float, k: int | None = None, tol: float | None = None
) -> EvaluationReport:
    """POLE ranking: signed autocovariance embedding of the residual graph."""
    e = embed_residual(manifest, t, k, signed=True, tol=tol)
    report = precision_at_k(rank_pairs(e, manifest), manifest, method_tag="pole")
    report.metadata.update({"markov_time": t, "k": e.dimension})
    return report


def unsigned_link_prediction(
    manifest: SplitManifest, t: float, k: int | None = None, tol: float | None = None
) -> EvaluationReport:
    """Unsigned autocovariance ranking; every held-out link is a positive."""
    e = embed_residual(manifest, t, k, signed=False, tol=tol)
    unsigned_view = replace(manifest, removed_weights=np.abs(manifest.removed_weights))
    report = precision_at_k(rank_pairs(e, unsigned_view), unsigned_view, method_tag="unsigned")
    report.metadata.update({"markov_time": t, "k": e.dimension})
    return report


# =============================================================================
# DISCONNECTED-PAIR SAMPLING
# =============================================================================

def sample_disconnected_pairs(
    graph: SignedGraph,
    size: int,
    rng: np.random.Generator,
    exclude: set[int] | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Uniform sample without replacement of unordered pairs not linked in `graph`.

    `exclude` holds pair keys u * n + v (u < v) that must not be drawn. The
    sample size is capped at the number of eligible pairs.
    """
    n = graph.node_count
    eu, ev, _ = graph.edge_arrays()
    taken = set((eu * n + ev).tolist()) | (exclude or set())
    available = n * (n - 1) // 2 - len(taken)
    size = min(size, available)

    drawn: list[int] = []
    seen: set[int] = set()
    while len(drawn) < size:
        batch = rng.integers(0, n, size=(2 * (size - len(drawn)) + 16, 2))
        for a, b in batch:
            if a == b:
                continue
            key = int(min(a, b)) * n + int(max(a, b))
            if key in taken or key in seen:
                continue
            seen.add(key)
            drawn.append(key)
            if len(drawn) == size:
                break
    keys = np.array(drawn, dtype=np.int64)
    return keys // n, keys % n


def pair_feature_table(
    manifest: SplitManifest,
    signed_embedding: Embedding,
    unsigned_embedding: Embedding,
    seed: int,
    sample_size: int | None = None,
) -> pd.DataFrame:
    """
    Per-pair (signed_sim, unsigned_sim, class) rows.

    Every held-out pair appears with class "positive" or "negative", followed
    by a seeded sample of pairs disconnected in the original graph.
    """
    sample_size = EVALUATION_PARAMS["feature_sample_size"] if sample_size is None else sample_size
    n = manifest.residual.node_count
    removed_keys = set((manifest.removed_pairs[:, 0] * n + manifest.removed_pairs[:, 1]).tolist())
    du, dv = sample_disconnected_pairs(
        manifest.residual, sample_size, stream_rng(seed, "feature-sample"),
        exclude=removed_keys,
    )
    order = np.lexsort((dv, du))
    du, dv = du[order], dv[order]

    u = np.concatenate([manifest.removed_pairs[:, 0], du])
    v = np.concatenate([manifest.removed_pairs[:, 1], dv])
    classes = np.concatenate([
        np.where(manifest.removed_weights > 0, "positive", "negative"),
        np.full(du.size, "disconnected"),
    ])
    labels = manifest.residual.node_labels
    return pd.DataFrame({
        "u_label": [labels[i] for i in u],
        "v_label": [labels[i] for i in v],
        "signed_sim": pair_similarities(signed_embedding, u, v),
        "unsigned_sim": pair_similarities(unsigned_embedding, u, v),
        "class": classes,
    })


# =============================================================================
# COMBINED MODE
# =============================================================================

def _features(signed_e: Embedding, unsigned_e: Embedding, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.column_stack([pair_similarities(signed_e, u, v), pair_similarities(unsigned_e, u, v)])


def _classifier_scores(model: LogisticModel, signed_e: Embedding, unsigned_e: Embedding, flip: bool):
    ws = signed_e.vectors * signed_e.effective_signs
    wu = unsigned_e.vectors * unsigned_e.effective_signs

    def score_rows(rows: np.ndarray) -> np.ndarray:
        block_s = ws[rows] @ signed_e.vectors.T
        block_u = wu[rows] @ unsigned_e.vectors.T
        X = np.column_stack([block_s.ravel(), block_u.ravel()])
        scores = model.decision_function(X).reshape(block_s.shape)
        return -scores if flip else scores

    return score_rows


def _train(link_u, link_v, dis_u, dis_v, signed_e, unsigned_e) -> LogisticModel:
    X = np.vstack([_features(signed_e, unsigned_e, link_u, link_v), _features(signed_e, unsigned_e, dis_u, dis_v)])
    y = np.concatenate([np.ones(link_u.size), np.zeros(dis_u.size)])
    return fit_logistic(X, y)


def _model_meta(model: LogisticModel | None) -> dict | None:
    if model is None:
        return None
    return {
        "weights": [float(w) for w in model.weights],
        "bias": float(model.bias),
        **model.training_meta,
    }


def combined_signed_link_prediction(
    g: SignedGraph,
    manifest: SplitManifest,
    t_signed: float,
    t_unsigned: float,
    k: int | None = None,
    seed: int = 0,
    tol: float | None = None,
) -> EvaluationReport:
    """
    Combine signed and unsigned similarity with two logistic classifiers.

    Training positives are the residual's own positive (resp. negative)
    links; training negatives are an equally large uniform sample of pairs
    disconnected in the residual ("neg-sample" stream). Candidates are ranked
    by the positive classifier's score (top) and by minus the negative
    classifier's score (bottom).

    Returns:
        EvaluationReport with both curves and the pair-feature table; a curve
        is None when its classifier or its held-out set is empty
    """
    _check_manifest(g, manifest)
    signed_e = embed_residual(manifest, t_signed, k, signed=True, tol=tol)
    unsigned_e = embed_residual(manifest, t_unsigned, k, signed=False, tol=tol)

    ru, rv, rw = manifest.residual.edge_arrays()
    pos_links, neg_links = rw > 0, rw < 0
    needed = int(max(pos_links.sum(), neg_links.sum()))
    du, dv = sample_disconnected_pairs(manifest.residual, needed, stream_rng(seed, "neg-sample"))

    models: dict[str, LogisticModel | None] = {}
    for sign, mask in (("positive", pos_links), ("negative", neg_links)):
        count = int(mask.sum())
        if count == 0:
            logger.warning("Residual graph has no %s links; %s classifier undefined", sign, sign)
            models[sign] = None
            continue
        models[sign] = _train(ru[mask], rv[mask], du[:count], dv[:count], signed_e, unsigned_e)

    curves = {}
    for sign, flip in (("positive", False), ("negative", True)):
        if models[sign] is None:
            curves[sign] = (None, None)
            continue
        ranking = rank_pairs(_classifier_scores(models[sign], signed_e, unsigned_e, flip), manifest)
        report = precision_at_k(ranking, manifest, method_tag="pole-combined")
        curves[sign] = (
            (report.precision_positive, report.counts_positive)
            if sign == "positive" else (report.precision_negative, report.counts_negative)
        )

    return EvaluationReport(
        precision_positive=curves["positive"][0],
        precision_negative=curves["negative"][0],
        method_tag="pole-combined",
        counts_positive=curves["positive"][1],
        counts_negative=curves["negative"][1],
        pair_features=pair_feature_table(manifest, signed_e, unsigned_e, seed),
        metadata={
            "split": manifest.summary(),
            "markov_time_signed": t_signed,
            "markov_time_unsigned": t_unsigned,
            "k": signed_e.dimension,
            "classifier_positive": _model_meta(models["positive"]),
            "classifier_negative": _model_meta(models["negative"]),
        },
    )

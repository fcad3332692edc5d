"""Analysis Module for the POLE toolkit

This module contains the measures and the link-prediction benchmark:
- polarization: Node- and graph-level polarization scores
- balance: Social balance and the signed triad census
- edge_split: Connectivity-preserving held-out splits (Wilson spanning trees)
- ranking: Candidate-pair ranking, precision@k and EvaluationReport
- link_prediction: Signed-only, unsigned and combined (logistic) predictors
- markov_time: Markov-time selection on an inner validation split
"""

from src.analysis.balance import BalanceReport, social_balance, triad_census
from src.analysis.edge_split import SplitManifest, inner_split, split_edges, uniform_spanning_tree
from src.analysis.link_prediction import (
    combined_signed_link_prediction,
    pair_feature_table,
    signed_link_prediction,
    unsigned_link_prediction,
)
from src.analysis.markov_time import best_markov_time, score_markov_times, select_markov_time
from src.analysis.polarization import PolarizationReport, graph_polarization_profile, node_polarization
from src.analysis.ranking import EvaluationReport, PairRanking, precision_at_k, rank_pairs

__all__ = [
    "BalanceReport",
    "EvaluationReport",
    "PairRanking",
    "PolarizationReport",
    "SplitManifest",
    "best_markov_time",
    "combined_signed_link_prediction",
    "graph_polarization_profile",
    "inner_split",
    "node_polarization",
    "pair_feature_table",
    "precision_at_k",
    "rank_pairs",
    "score_markov_times",
    "select_markov_time",
    "signed_link_prediction",
    "social_balance",
    "split_edges",
    "triad_census",
    "uniform_spanning_tree",
    "unsigned_link_prediction",
]

"""Models Module for the POLE toolkit

This module contains the dynamics, embedding and classifier code:
- random_walk: Signed/unsigned transition matrices and the walk-enumeration oracle
- autocovariance: Signed autocovariance similarity R(t)
- factorization: Rank-k embeddings, similarity reconstruction, embedding files
- logistic_combiner: Gradient-descent logistic regression for similarity combination
"""

from src.models.autocovariance import AutocovarianceMatrix, autocovariance
from src.models.factorization import (
    Embedding,
    factorize,
    read_embedding,
    reconstruction_error,
    similarity,
    similarity_matrix,
    write_embedding,
)
from src.models.logistic_combiner import LogisticModel, fit_logistic
from src.models.random_walk import (
    TransitionField,
    Walk,
    continuous_transitions,
    continuous_transitions_profile,
    discrete_transitions,
    enumerate_walks,
    iter_transition_columns,
    walk_enumeration_matrix,
)

__all__ = [
    "AutocovarianceMatrix",
    "Embedding",
    "LogisticModel",
    "TransitionField",
    "Walk",
    "autocovariance",
    "continuous_transitions",
    "continuous_transitions_profile",
    "discrete_transitions",
    "enumerate_walks",
    "factorize",
    "fit_logistic",
    "iter_transition_columns",
    "read_embedding",
    "reconstruction_error",
    "similarity",
    "similarity_matrix",
    "walk_enumeration_matrix",
    "write_embedding",
]

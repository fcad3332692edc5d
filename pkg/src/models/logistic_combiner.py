"""
Logistic Combiner
=================
Binary logistic regression trained by full-batch gradient descent, used to
combine the signed and unsigned similarity of a node pair into one score.

Objective (features standardized with sklearn's StandardScaler):

    L(w, b) = mean(log(1 + exp(z)) - y z) + (lambda / 2) ||w||^2,   z = X w + b

The bias is not penalized. Training stops when one step improves the loss by
less than the convergence tolerance, or after max_iter steps.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit
from sklearn.preprocessing import StandardScaler

from config import EVALUATION_PARAMS
from src.utils.exceptions import InvalidInputError, NumericalError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LogisticModel:
    """Fitted classifier; `weights` act on standardized features."""

    weights: np.ndarray
    bias: float
    scaler: StandardScaler
    training_meta: dict = field(default_factory=dict)
    loss_history: np.ndarray = field(default_factory=lambda: np.empty(0))

    def decision_function(self, X: np.ndarray) -> np.ndarray:
        Xs = self.scaler.transform(np.asarray(X, dtype=np.float64))
        return Xs @ self.weights + self.bias

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        return expit(self.decision_function(X))


def _penalized_loss(z: np.ndarray, y: np.ndarray, w: np.ndarray, l2_penalty: float) -> float:
    return float(np.mean(np.logaddexp(0.0, z) - y * z) + 0.5 * l2_penalty * np.dot(w, w))


def fit_logistic(
    X: np.ndarray,
    y: np.ndarray,
    learning_rate: float | None = None,
    max_iter: int | None = None,
    tol: float | None = None,
    l2_penalty: float | None = None,
) -> LogisticModel:
    """
    Fit an L2-penalized logistic regression.

    Args:
        X: Feature matrix (m x p)
        y: Binary labels (m,)
        learning_rate: Gradient step (default 0.5)
        max_iter: Iteration cap (default 10,000)
        tol: Stop when the loss improves by less than this (default 1e-8)
        l2_penalty: lambda (default 1e-4)

    Raises:
        InvalidInputError: Single-class labels, non-finite or mis-shaped input
        NumericalError: Loss becomes non-finite
    """
    learning_rate = EVALUATION_PARAMS["learning_rate"] if learning_rate is None else learning_rate
    max_iter = EVALUATION_PARAMS["max_iter"] if max_iter is None else max_iter
    tol = EVALUATION_PARAMS["convergence_tol"] if tol is None else tol
    l2_penalty = EVALUATION_PARAMS["l2_penalty"] if l2_penalty is None else l2_penalty

    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    y = np.asarray(y, dtype=np.float64).ravel()
    if X.shape[0] != y.size or y.size == 0:
        raise InvalidInputError(f"Got {X.shape[0]} feature rows for {y.size} labels")
    if not np.all(np.isfinite(X)):
        raise InvalidInputError("Features must be finite")
    if not np.all((y == 0) | (y == 1)):
        raise InvalidInputError("Labels must be 0 or 1")
    if np.unique(y).size < 2:
        raise InvalidInputError("Logistic fit needs examples of both labels")

    scaler = StandardScaler().fit(X)
    Xs = scaler.transform(X)
    m = y.size
    w = np.zeros(Xs.shape[1])
    b = 0.0

    losses = [_penalized_loss(Xs @ w + b, y, w, l2_penalty)]
    converged = False
    for _ in range(max_iter):
        residual = expit(Xs @ w + b) - y
        w = w - learning_rate * (Xs.T @ residual / m + l2_penalty * w)
        b = b - learning_rate * float(np.mean(residual))
        loss = _penalized_loss(Xs @ w + b, y, w, l2_penalty)
        if not np.isfinite(loss):
            raise NumericalError("Logistic loss diverged; lower the learning rate")
        losses.append(loss)
        if losses[-2] - loss < tol:
            converged = True
            break

    meta = {"iterations": len(losses) - 1, "final_loss": losses[-1], "converged": converged}
    if not converged:
        logger.warning("Logistic fit stopped at max_iter=%d (loss %.6g)", max_iter, losses[-1])
    return LogisticModel(w, b, scaler, meta, np.array(losses))

"""Binary soft-margin SVM trained with sequential minimal optimization.

The solver is the classic pairwise coordinate ascent on the dual problem:
sweep over examples, and for each KKT violator optimize its alpha jointly
with a randomly chosen partner (the seeded RNG makes training reproducible).
Convergence is declared after a full sweep with no updates; the KKT checker
below is the independent oracle used by the tests.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ..errors import TrainingError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SvmHyperParams:
    C: float = 10.0
    gamma: float = 1.0 / 29.0
    tolerance: float = 1e-3
    max_passes: int = 200  # sweep limit before giving up with a warning

    def __post_init__(self):
        for name in ("C", "gamma", "tolerance"):
            if getattr(self, name) <= 0:
                raise TrainingError(f"{name} must be positive, got {getattr(self, name)}")
        if self.max_passes < 1:
            raise TrainingError(f"max_passes must be >= 1, got {self.max_passes}")


def rbf_kernel(x: np.ndarray, z: np.ndarray, gamma: float) -> float:
    """exp(-gamma * ||x - z||^2)."""
    x = np.asarray(x, dtype=float)
    z = np.asarray(z, dtype=float)
    if x.shape != z.shape:
        raise TrainingError(f"kernel inputs must have equal dimension: {x.shape} vs {z.shape}")
    diff = x - z
    return float(np.exp(-gamma * np.dot(diff, diff)))


def rbf_kernel_matrix(A: np.ndarray, B: np.ndarray, gamma: float) -> np.ndarray:
    """Pairwise RBF kernel values, shape (len(A), len(B))."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    sq = (np.sum(A ** 2, axis=1)[:, None] + np.sum(B ** 2, axis=1)[None, :]
          - 2.0 * A @ B.T)
    np.maximum(sq, 0.0, out=sq)
    return np.exp(-gamma * sq)


@dataclass(frozen=True)
class BinarySvmModel:
    """Support vectors with dual coefficients alpha_i * y_i and bias."""

    support_vectors: np.ndarray  # (n_sv, d), normalized feature rows
    dual_coef: np.ndarray        # (n_sv,)
    bias: float
    gamma: float
    converged: bool = True

    def decision(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        K = rbf_kernel_matrix(X, self.support_vectors, self.gamma)
        return K @ self.dual_coef + self.bias

    def decision_one(self, x: np.ndarray) -> float:
        return float(self.decision(np.asarray(x)[None])[0])


def train_binary_svm(X: np.ndarray, y: np.ndarray, params: SvmHyperParams,
                     rng: np.random.Generator) -> BinarySvmModel:
    """Train on normalized features X (n, d) and labels y in {-1, +1}."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    n = X.shape[0]
    if n < 2 or np.all(y > 0) or np.all(y < 0):
        raise TrainingError("need at least one example of each sign")
    if not np.all(np.abs(y) == 1):
        raise TrainingError("labels must be -1 or +1")

    C, tol = params.C, params.tolerance
    K = rbf_kernel_matrix(X, X, params.gamma)
    alpha = np.zeros(n)
    state = {"b": 0.0}
    E = -y.copy()  # f(x) - y with f = 0 initially

    def try_pair(i: int, j: int) -> bool:
        """Jointly optimize (alpha_i, alpha_j); commit and report real progress."""
        if i == j:
            return False
        if y[i] != y[j]:
            L = max(0.0, alpha[j] - alpha[i])
            H = min(C, C + alpha[j] - alpha[i])
        else:
            L = max(0.0, alpha[i] + alpha[j] - C)
            H = min(C, alpha[i] + alpha[j])
        if L >= H:
            return False
        eta = 2.0 * K[i, j] - K[i, i] - K[j, j]
        if eta >= 0:
            return False
        aj_new = float(np.clip(alpha[j] - y[j] * (E[i] - E[j]) / eta, L, H))
        dj = aj_new - alpha[j]
        if abs(dj) < 1e-10:
            return False
        ai_new = alpha[i] - y[i] * y[j] * dj
        di = ai_new - alpha[i]
        b = state["b"]
        b1 = b - E[i] - y[i] * di * K[i, i] - y[j] * dj * K[i, j]
        b2 = b - E[j] - y[i] * di * K[i, j] - y[j] * dj * K[j, j]
        if 0.0 < ai_new < C:
            b_new = b1
        elif 0.0 < aj_new < C:
            b_new = b2
        else:
            b_new = 0.5 * (b1 + b2)
        E[:] += y[i] * di * K[i] + y[j] * dj * K[j] + (b_new - b)
        alpha[i], alpha[j], state["b"] = ai_new, aj_new, b_new
        return True

    def second_choice(i: int) -> bool:
        """Best partner by |E_i - E_j|, then seeded-random-start fallbacks."""
        non_bound = np.flatnonzero((alpha > 0) & (alpha < C))
        if non_bound.size:
            j = int(non_bound[np.argmax(np.abs(E[i] - E[non_bound]))])
            if try_pair(i, j):
                return True
            start = int(rng.integers(non_bound.size))
            for k in range(non_bound.size):
                if try_pair(i, int(non_bound[(start + k) % non_bound.size])):
                    return True
        start = int(rng.integers(n))
        for k in range(n):
            if try_pair(i, (start + k) % n):
                return True
        return False

    converged = False
    for _ in range(params.max_passes):
        violators = 0
        for i in range(n):
            r = E[i] * y[i]  # = y_i f(x_i) - 1
            if (r < -tol and alpha[i] < C) or (r > tol and alpha[i] > 0):
                violators += 1
                second_choice(i)
        if violators == 0:
            converged = True
            break
    b = state["b"]

    sv = alpha > 1e-8
    if not sv.any():
        raise TrainingError("training produced no support vectors")
    model = BinarySvmModel(support_vectors=X[sv].copy(), dual_coef=(alpha * y)[sv],
                           bias=float(b), gamma=params.gamma, converged=converged)
    if not converged:
        violations = kkt_violations(model, X, y, C, tol)
        log.warning("SMO hit the sweep limit (%d) with %d KKT violations; "
                    "returning the current model", params.max_passes, violations)
    return model


def kkt_violations(model: BinarySvmModel, X: np.ndarray, y: np.ndarray,
                   C: float, tol: float, alpha: np.ndarray | None = None) -> int:
    """Count training points whose KKT optimality conditions fail beyond tol.

    When alpha is not given it is reconstructed from the model's dual
    coefficients (points absent from the support set have alpha = 0).
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if alpha is None:
        alpha = np.zeros(len(X))
        sv = model.support_vectors
        for k, coef in enumerate(model.dual_coef):
            # match support vector rows back to training rows
            idx = np.flatnonzero(np.all(X == sv[k], axis=1))
            if idx.size:
                alpha[idx[0]] = abs(coef)
    margins = y * model.decision(X)
    count = 0
    for a, m in zip(alpha, margins):
        if a <= 1e-8:
            ok = m >= 1.0 - tol
        elif a >= C - 1e-8:
            ok = m <= 1.0 + tol
        else:
            ok = abs(m - 1.0) <= tol
        count += not ok
    return count

"""Repeated stratified k-fold cross-validation and hyperparameter grid search."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product

import numpy as np

from ..errors import TrainingError
from .ovr import predict_batch, train_ovr
from .svm import SvmHyperParams

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CvReport:
    k: int
    iterations: int
    per_iteration_accuracy: tuple[float, ...]
    mean_accuracy: float
    confusion: dict  # (true, predicted) -> count, totalled over all folds
    seed: int
    stratified: bool


def _stratified_folds(labels: list, k: int, rng: np.random.Generator) -> tuple[list[list[int]], bool]:
    """Deal each class's shuffled indices round-robin into k folds.

    Falls back to unstratified folds (with a warning) when some class has
    fewer than k members.
    """
    n = len(labels)
    by_class: dict = {}
    for i, lab in enumerate(labels):
        by_class.setdefault(lab, []).append(i)
    stratified = all(len(idx) >= k for idx in by_class.values())
    folds: list[list[int]] = [[] for _ in range(k)]
    if stratified:
        for lab in sorted(by_class, key=str):
            idx = np.array(by_class[lab])
            rng.shuffle(idx)
            for pos, i in enumerate(idx):
                folds[pos % k].append(int(i))
    else:
        log.warning("some class has fewer than %d members; folds are unstratified", k)
        order = rng.permutation(n)
        for pos, i in enumerate(order):
            folds[pos % k].append(int(i))
    return folds, stratified


def default_trainer(params: SvmHyperParams, class_set, seed: int):
    """Trainer factory for cross_validate: returns train(X, labels) -> predict_fn."""

    def train(X_train, labels_train):
        model = train_ovr(X_train, labels_train, params, class_set, seed=seed)

        def predictor(X_test):
            labels, _ = predict_batch(model, X_test)
            return labels

        return predictor

    return train


def cross_validate(X: np.ndarray, labels, k: int, iterations: int, seed: int,
                   params: SvmHyperParams | None = None, class_set=None,
                   trainer=None) -> CvReport:
    """Repeat: shuffle, split into k folds, train on k-1, test on 1.

    Each iteration's accuracy is the mean of its fold accuracies; the report
    averages over iterations. A custom trainer (see default_trainer) can be
    injected, e.g. a constant-prediction stub in tests.
    """
    X = np.asarray(X, dtype=float)
    labels = list(labels)
    n = len(labels)
    if k < 2:
        raise TrainingError(f"k must be >= 2, got {k}")
    if k > n:
        raise TrainingError(f"k={k} exceeds sample count {n}")
    if iterations < 1:
        raise TrainingError(f"iterations must be >= 1, got {iterations}")
    if trainer is None:
        if class_set is None:
            raise TrainingError("either a class_set or a trainer must be given")
        trainer = default_trainer(params or SvmHyperParams(), class_set, seed)

    rng = np.random.default_rng(seed)
    per_iteration = []
    confusion: dict = {}
    stratified_all = True
    for _ in range(iterations):
        folds, stratified = _stratified_folds(labels, k, rng)
        stratified_all = stratified_all and stratified
        fold_accuracies = []
        for f in range(k):
            test_idx = np.array(folds[f])
            train_idx = np.array([i for g in range(k) if g != f for i in folds[g]])
            predict_fn = trainer(X[train_idx], [labels[i] for i in train_idx])
            predicted = predict_fn(X[test_idx])
            correct = 0
            for i, pred in zip(test_idx, predicted):
                truth = labels[i]
                confusion[(truth, pred)] = confusion.get((truth, pred), 0) + 1
                correct += pred == truth
            fold_accuracies.append(correct / len(test_idx))
        per_iteration.append(float(np.mean(fold_accuracies)))

    return CvReport(k=k, iterations=iterations,
                    per_iteration_accuracy=tuple(per_iteration),
                    mean_accuracy=float(np.mean(per_iteration)),
                    confusion=confusion, seed=seed, stratified=stratified_all)


def grid_search(X: np.ndarray, labels, c_grid, gamma_grid, inner_k: int, seed: int,
                class_set=None, iterations: int = 1,
                base_params: SvmHyperParams | None = None) -> SvmHyperParams:
    """Best (C, gamma) by inner-CV mean accuracy; ties prefer smaller C, then gamma."""
    c_grid = sorted(c_grid)
    gamma_grid = sorted(gamma_grid)
    if not c_grid or not gamma_grid:
        raise TrainingError("hyperparameter grids must be non-empty")
    base = base_params or SvmHyperParams()
    best = None
    best_acc = -1.0
    for C, gamma in product(c_grid, gamma_grid):
        params = SvmHyperParams(C=C, gamma=gamma, tolerance=base.tolerance,
                                max_passes=base.max_passes)
        report = cross_validate(X, labels, inner_k, iterations, seed,
                                params=params, class_set=class_set)
        if report.mean_accuracy > best_acc:
            best, best_acc = params, report.mean_accuracy
    return best

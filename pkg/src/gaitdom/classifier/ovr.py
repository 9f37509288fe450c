"""One-vs-rest multiclass wrapper over the binary SVM."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from ..errors import LayoutMismatchError, TrainingError
from ..features.extract import GaitFeatures
from ..features.layout import LAYOUT_VERSION
from ..features.normalize import NormalizationParams, apply_normalization, fit_normalization
from ..mapping import FIVE_LEVELS, THREE_LEVELS
from .svm import BinarySvmModel, SvmHyperParams, train_binary_svm

log = logging.getLogger(__name__)

DEGENERATE_SCORE = -1.0  # constant decision value for classes absent from training


@dataclass(frozen=True)
class OvrModel:
    """One binary scorer per class, plus the feature normalization it expects.

    classes must be ordered from the lowest to the highest dominance level;
    argmax ties resolve to the earliest class in the list.
    """

    classes: tuple
    binaries: tuple  # BinarySvmModel or None (degenerate: class absent at training)
    normalization: NormalizationParams
    layout: str
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.classes) not in (3, 5):
            raise TrainingError(
                f"class set must have 3 or 5 levels, got {len(self.classes)}")
        if len(self.binaries) != len(self.classes):
            raise TrainingError("one binary scorer required per class")

    @property
    def degenerate_classes(self) -> tuple:
        return tuple(c for c, m in zip(self.classes, self.binaries) if m is None)

    def decision_values(self, normalized_rows: np.ndarray) -> np.ndarray:
        rows = np.atleast_2d(normalized_rows)
        out = np.empty((rows.shape[0], len(self.classes)))
        for k, binary in enumerate(self.binaries):
            out[:, k] = DEGENERATE_SCORE if binary is None else binary.decision(rows)
        return out


def train_ovr(X: np.ndarray, labels, params: SvmHyperParams, class_set,
              seed: int = 0, layout: str = LAYOUT_VERSION,
              normalization: NormalizationParams | None = None) -> OvrModel:
    """Fit normalization on X, then train one binary model per class.

    Classes with no training examples get a constant -1 scorer and are
    recorded as degenerate.
    """
    X = np.asarray(X, dtype=float)
    labels = list(labels)
    if X.ndim != 2 or X.shape[0] == 0:
        raise TrainingError(f"empty or malformed training data: shape {X.shape}")
    if len(labels) != X.shape[0]:
        raise TrainingError(f"{X.shape[0]} rows but {len(labels)} labels")
    if len(set(labels)) < 2:
        raise TrainingError("need at least 2 distinct labels")

    if normalization is None:
        normalization = fit_normalization(X)
    Xn = apply_normalization(X, normalization)

    seeds = np.random.SeedSequence(seed).spawn(len(class_set))
    binaries = []
    for cls, child_seed in zip(class_set, seeds):
        y = np.where(np.asarray([lab == cls for lab in labels]), 1.0, -1.0)
        if not np.any(y > 0):
            log.warning("class %s absent from training data; using a degenerate scorer", cls)
            binaries.append(None)
            continue
        binaries.append(train_binary_svm(Xn, y, params, np.random.default_rng(child_seed)))
    metadata = {"seed": seed, "C": params.C, "gamma": params.gamma,
                "tolerance": params.tolerance, "max_passes": params.max_passes}
    return OvrModel(classes=tuple(class_set), binaries=tuple(binaries),
                    normalization=normalization, layout=layout, metadata=metadata)


def predict(model: OvrModel, features) -> tuple:
    """(label, decision values) for one feature vector or GaitFeatures."""
    labels, values = predict_batch(model, _as_rows(model, features))
    return labels[0], values[0]


def predict_batch(model: OvrModel, rows: np.ndarray) -> tuple[list, np.ndarray]:
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    normalized = apply_normalization(rows, model.normalization)
    values = model.decision_values(normalized)
    # argmax with ties toward the earliest (lowest dominance) class
    winners = np.argmax(values == values.max(axis=1, keepdims=True), axis=1)
    return [model.classes[k] for k in winners], values


def _as_rows(model: OvrModel, features) -> np.ndarray:
    if isinstance(features, GaitFeatures):
        if features.layout != model.layout:
            raise LayoutMismatchError(model.layout, features.layout)
        return features.values[None]
    return np.atleast_2d(np.asarray(features, dtype=float))


def five_level_classes() -> tuple:
    return FIVE_LEVELS


def three_level_classes() -> tuple:
    return THREE_LEVELS


def training_accuracy(model: OvrModel, X: np.ndarray, labels) -> float:
    predicted, _ = predict_batch(model, X)
    labels = list(labels)
    return sum(p == t for p, t in zip(predicted, labels)) / len(labels)

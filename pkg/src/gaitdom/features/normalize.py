"""Min-max normalization of feature vectors to [-1, 1].

The training minimum maps to -1 and the maximum to +1; zero-range dimensions
map to 0. Test-time values outside the training range are deliberately not
clamped, so out-of-range inputs stay visible to the classifier.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class NormalizationParams:
    minimum: np.ndarray
    maximum: np.ndarray

    def __post_init__(self):
        lo = np.asarray(self.minimum, dtype=float)
        hi = np.asarray(self.maximum, dtype=float)
        if lo.shape != hi.shape or lo.ndim != 1:
            raise ValueError(f"min/max shapes disagree: {lo.shape} vs {hi.shape}")
        if np.any(lo > hi):
            raise ValueError("per-dimension minimum exceeds maximum")
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "minimum", lo)
        object.__setattr__(self, "maximum", hi)


def fit_normalization(rows: np.ndarray) -> NormalizationParams:
    rows = np.asarray(rows, dtype=float)
    if rows.ndim != 2 or rows.shape[0] < 1:
        raise ValueError(f"need at least one feature row, got shape {rows.shape}")
    return NormalizationParams(minimum=rows.min(axis=0), maximum=rows.max(axis=0))


def apply_normalization(values: np.ndarray, params: NormalizationParams) -> np.ndarray:
    """Affine map per dimension; works on a single vector or a matrix of rows."""
    values = np.asarray(values, dtype=float)
    span = params.maximum - params.minimum
    zero = span == 0
    safe = np.where(zero, 1.0, span)
    scaled = -1.0 + 2.0 * (values - params.minimum) / safe
    return np.where(zero, 0.0, scaled)

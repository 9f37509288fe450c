"""Full 29-dimensional gait feature vector and its CSV form."""
from __future__ import annotations

import csv
import logging
from dataclasses import dataclass

import numpy as np

from ..errors import GaitValidationError
from ..mocap.skeleton import Gait
from .kinematics import joint_kinematics
from .layout import GAIT_COLUMNS, LAYOUT_VERSION, N_GAIT_FEATURES
from .posture import batch_posture_features
from .strikes import StrikeConfig, detect_foot_strikes, stride_and_cycle

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GaitFeatures:
    """29 feature values in layout order, tagged with the layout version."""

    values: np.ndarray
    gait_id: str = ""
    layout: str = LAYOUT_VERSION

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float)
        if arr.shape != (N_GAIT_FEATURES,):
            raise GaitValidationError(
                f"expected {N_GAIT_FEATURES} values, got {arr.shape}", "values")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)


def extract_features(gait: Gait, strike_config: StrikeConfig = StrikeConfig()) -> GaitFeatures:
    """Average the 27 per-frame features over all frames, then append the
    gait cycle time and stride length."""
    posture, degenerate = batch_posture_features(gait.frames)
    if degenerate.any():
        log.warning("gait %s: %d frames with degenerate posture geometry",
                    gait.id, int(degenerate.sum()))
    movement = joint_kinematics(gait)
    per_frame = np.concatenate([posture, movement], axis=1)  # (tau, 27)
    averaged = per_frame.mean(axis=0)
    strikes = detect_foot_strikes(gait, strike_config)
    stride_length, gait_cycle_time = stride_and_cycle(gait, strikes)
    values = np.concatenate([averaged, [gait_cycle_time, stride_length]])
    return GaitFeatures(values=values, gait_id=gait.id)


def write_features_csv(features: list[GaitFeatures], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(("gait_id",) + GAIT_COLUMNS)
        for f in features:
            writer.writerow([f.gait_id] + [repr(float(v)) for v in f.values])


def read_features_csv(path) -> list[GaitFeatures]:
    expected = ("gait_id",) + GAIT_COLUMNS
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        if header != expected:
            raise GaitValidationError(f"unexpected header {header}", "header")
        out = []
        for row in reader:
            out.append(GaitFeatures(values=np.array([float(v) for v in row[1:]]),
                                    gait_id=row[0]))
    return out

"""Speed, acceleration, and jerk magnitudes of the five tracked joints."""
from __future__ import annotations

import numpy as np

from ..errors import InsufficientFramesError
from ..mocap.skeleton import Gait, JointId
from .layout import TRACKED_JOINTS

_TRACKED_INDICES = tuple(int(JointId[name]) for name in TRACKED_JOINTS)


def _pad_front(series: np.ndarray, length: int) -> np.ndarray:
    """Repeat the first value so the series has the requested length."""
    pad = length - series.shape[0]
    return np.concatenate([np.repeat(series[:1], pad, axis=0), series], axis=0)


def joint_kinematics(gait: Gait) -> np.ndarray:
    """Per-frame movement block, shape (tau, 15).

    Columns: speeds of (RHand, LHand, Head, RFoot, LFoot), then acceleration
    magnitudes, then jerk magnitudes. Velocity is the forward difference
    scaled by fps; acceleration and jerk are successive fps-scaled
    differences of the vector series. Shorter difference series are padded
    by repeating their first value so every column has length tau.
    """
    tau = gait.n_frames
    if tau < 4:
        raise InsufficientFramesError(
            f"jerk needs three differences: gait {gait.id!r} has {tau} frames, need >= 4")
    tracks = gait.frames[:, _TRACKED_INDICES, :]  # (tau, 5, 3)
    vel = np.diff(tracks, axis=0) * gait.fps      # (tau-1, 5, 3)
    acc = np.diff(vel, axis=0) * gait.fps         # (tau-2, 5, 3)
    jerk = np.diff(acc, axis=0) * gait.fps        # (tau-3, 5, 3)

    speed = _pad_front(np.linalg.norm(vel, axis=2), tau)
    acc_mag = _pad_front(np.linalg.norm(acc, axis=2), tau)
    jerk_mag = _pad_front(np.linalg.norm(jerk, axis=2), tau)
    return np.concatenate([speed, acc_mag, jerk_mag], axis=1)

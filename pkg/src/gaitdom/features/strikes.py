"""Foot-strike detection and the stride/cycle summary features.

A strike is a local minimum of foot height that sits within a configurable
band above the foot's global minimum and is separated from other strikes by
a refractory period. Stride length is measured between consecutive strikes
of the same foot (one full gait cycle).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InsufficientFramesError, NoCycleError
from ..mocap.skeleton import Gait, JointId


@dataclass(frozen=True)
class StrikeConfig:
    """Detector thresholds; both exposed because mocap noise varies by dataset."""

    height_band: float = 0.10   # accept minima within this fraction of the height range
    refractory_s: float = 0.20  # minimum separation between strikes, in seconds


@dataclass(frozen=True)
class FootStrikes:
    """Strike frame indices per foot, strictly increasing."""

    left: tuple[int, ...]
    right: tuple[int, ...]

    def for_foot(self, foot: JointId) -> tuple[int, ...]:
        return self.left if foot == JointId.LFoot else self.right


def _detect_1d(height: np.ndarray, fps: float, config: StrikeConfig) -> tuple[int, ...]:
    tau = height.shape[0]
    if tau < 3:
        return ()
    prev = height[:-2]
    cur = height[1:-1]
    nxt = height[2:]
    # Local minimum: strictly below the previous sample, not above the next
    # (picks the first sample of a flat trough).
    candidate = np.flatnonzero((cur < prev) & (cur <= nxt)) + 1
    if candidate.size == 0:
        return ()
    hmin = float(height.min())
    hmax = float(height.max())
    threshold = hmin + config.height_band * (hmax - hmin)
    candidate = candidate[height[candidate] <= threshold]
    if candidate.size == 0:
        return ()
    # Refractory suppression, deepest minima win; ties go to the earlier frame.
    min_gap = config.refractory_s * fps
    order = sorted(candidate, key=lambda i: (height[i], i))
    kept: list[int] = []
    for i in order:
        if all(abs(int(i) - k) >= min_gap for k in kept):
            kept.append(int(i))
    return tuple(sorted(kept))


def detect_foot_strikes(gait: Gait, config: StrikeConfig = StrikeConfig()) -> FootStrikes:
    """Strike frames for both feet; errors if no foot shows a full cycle."""
    if gait.n_frames < 2:
        raise InsufficientFramesError(f"gait {gait.id!r} has fewer than 2 frames")
    left = _detect_1d(gait.joint_track(JointId.LFoot)[:, 1], gait.fps, config)
    right = _detect_1d(gait.joint_track(JointId.RFoot)[:, 1], gait.fps, config)
    if len(left) < 2 and len(right) < 2:
        raise NoCycleError(
            f"gait {gait.id!r}: fewer than 2 foot strikes on each foot "
            f"(left={len(left)}, right={len(right)})")
    return FootStrikes(left=left, right=right)


def stride_and_cycle(gait: Gait, strikes: FootStrikes) -> tuple[float, float]:
    """(stride_length m, gait_cycle_time s) averaged over feet with >= 2 strikes."""
    stride_means = []
    gap_means = []
    for foot in (JointId.LFoot, JointId.RFoot):
        frames = strikes.for_foot(foot)
        if len(frames) < 2:
            continue
        track = gait.joint_track(foot)
        pos = track[list(frames)][:, [0, 2]]  # horizontal plane
        steps = np.diff(pos, axis=0)
        stride_means.append(float(np.linalg.norm(steps, axis=1).mean()))
        gap_means.append(float(np.diff(np.asarray(frames)).mean()))
    if not stride_means:
        raise NoCycleError(f"gait {gait.id!r}: no foot has two strikes")
    stride_length = float(np.mean(stride_means))
    gait_cycle_time = float(np.mean(gap_means)) / gait.fps
    return stride_length, gait_cycle_time

"""Canonical 16-joint skeleton and the Gait value type."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

from ..errors import GaitValidationError


class JointId(IntEnum):
    """Canonical joint set. Root is index 0; playback and retargeting rely on this order."""

    Root = 0
    Spine = 1
    Neck = 2
    Head = 3
    LShoulder = 4
    LElbow = 5
    LHand = 6
    RShoulder = 7
    RElbow = 8
    RHand = 9
    LHip = 10
    LKnee = 11
    LFoot = 12
    RHip = 13
    RKnee = 14
    RFoot = 15


N_JOINTS = len(JointId)

# Parent-child pairs used for drawing and sanity checks (root has no parent).
BONES: tuple[tuple[JointId, JointId], ...] = (
    (JointId.Root, JointId.Spine),
    (JointId.Spine, JointId.Neck),
    (JointId.Neck, JointId.Head),
    (JointId.Neck, JointId.LShoulder),
    (JointId.LShoulder, JointId.LElbow),
    (JointId.LElbow, JointId.LHand),
    (JointId.Neck, JointId.RShoulder),
    (JointId.RShoulder, JointId.RElbow),
    (JointId.RElbow, JointId.RHand),
    (JointId.Root, JointId.LHip),
    (JointId.LHip, JointId.LKnee),
    (JointId.LKnee, JointId.LFoot),
    (JointId.Root, JointId.RHip),
    (JointId.RHip, JointId.RKnee),
    (JointId.RKnee, JointId.RFoot),
)


def validate_pose(positions: np.ndarray, field_path: str = "pose") -> np.ndarray:
    """Check a (16, 3) position array and return it as float64."""
    arr = np.asarray(positions, dtype=float)
    if arr.shape != (N_JOINTS, 3):
        raise GaitValidationError(f"expected shape (16, 3), got {arr.shape}", field_path)
    if not np.all(np.isfinite(arr)):
        bad = int(np.argwhere(~np.isfinite(arr))[0][0])
        raise GaitValidationError("non-finite coordinate", f"{field_path}[{bad}]")
    return arr


@dataclass(frozen=True)
class Gait:
    """A timed sequence of canonical 16-joint poses.

    frames has shape (tau, 16, 3) in meters, indexed by JointId; fps is the
    capture rate. Immutable after construction; safe to share across threads.
    """

    id: str
    frames: np.ndarray
    fps: float
    source: str = ""

    def __post_init__(self):
        arr = np.asarray(self.frames, dtype=float)
        if arr.ndim != 3 or arr.shape[1:] != (N_JOINTS, 3):
            raise GaitValidationError(f"expected shape (tau, 16, 3), got {arr.shape}", "frames")
        if arr.shape[0] < 1:
            raise GaitValidationError("at least one frame required", "frames")
        if not np.all(np.isfinite(arr)):
            t = int(np.argwhere(~np.isfinite(arr))[0][0])
            raise GaitValidationError("non-finite coordinate", f"frames[{t}]")
        if not (math.isfinite(self.fps) and self.fps > 0):
            raise GaitValidationError(f"fps must be finite and positive, got {self.fps}", "fps")
        arr.setflags(write=False)
        object.__setattr__(self, "frames", arr)

    @property
    def n_frames(self) -> int:
        return self.frames.shape[0]

    @property
    def duration(self) -> float:
        return self.n_frames / self.fps

    def joint_track(self, joint: JointId) -> np.ndarray:
        """Positions of one joint over time, shape (tau, 3)."""
        return self.frames[:, int(joint), :]

"""Per-pose posture features: bounding-box volume, angles, distances, areas.

The bounding box is computed in a heading-aligned frame: each pose is rotated
about the world vertical so the walker's facing direction (hip line crossed
with vertical) points along +Z. This makes the volume invariant to rotations
about the vertical axis; all other posture features are rotation-invariant
by construction.
"""
from __future__ import annotations

import numpy as np

from ..mocap.skeleton import JointId

VERTICAL = np.array([0.0, 1.0, 0.0])

_ROOT = int(JointId.Root)
_SPINE = int(JointId.Spine)
_NECK = int(JointId.Neck)
_HEAD = int(JointId.Head)
_LSHO = int(JointId.LShoulder)
_RSHO = int(JointId.RShoulder)
_LHAND = int(JointId.LHand)
_RHAND = int(JointId.RHand)
_LHIP = int(JointId.LHip)
_RHIP = int(JointId.RHip)
_LFOOT = int(JointId.LFoot)
_RFOOT = int(JointId.RFoot)

_DEGENERATE_EPS = 1e-12


def heading_vector(pose: np.ndarray) -> np.ndarray | None:
    """Unit facing direction in the horizontal plane, or None if degenerate.

    heading = (LHip - RHip) x vertical, which is horizontal by construction.
    """
    hip_line = pose[_LHIP] - pose[_RHIP]
    h = np.array([-hip_line[2], 0.0, hip_line[0]])  # cross(hip_line, vertical)
    norm = np.linalg.norm(h)
    if norm < _DEGENERATE_EPS:
        return None
    return h / norm


def _angles_between(u: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Angles between row vectors of u and v; degenerate rows become 0."""
    nu = np.linalg.norm(u, axis=-1)
    nv = np.linalg.norm(v, axis=-1)
    denom = nu * nv
    degenerate = denom < _DEGENERATE_EPS
    safe = np.where(degenerate, 1.0, denom)
    cosine = np.clip(np.einsum("...i,...i->...", u, v) / safe, -1.0, 1.0)
    angles = np.where(degenerate, 0.0, np.arccos(cosine))
    return angles, degenerate


def _triangle_area(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    return 0.5 * np.linalg.norm(np.cross(b - a, c - a), axis=-1)


def batch_posture_features(frames: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Posture block for every frame at once.

    frames: (tau, 16, 3). Returns (values (tau, 12), degenerate (tau,) bool)
    where degenerate marks frames with a collapsed angle or heading.
    """
    frames = np.asarray(frames, dtype=float)
    if frames.ndim == 2:
        frames = frames[None]
    tau = frames.shape[0]
    out = np.empty((tau, 12))

    root = frames[:, _ROOT]
    spine = frames[:, _SPINE]
    neck = frames[:, _NECK]
    head = frames[:, _HEAD]
    lsho = frames[:, _LSHO]
    rsho = frames[:, _RSHO]
    lhand = frames[:, _LHAND]
    rhand = frames[:, _RHAND]
    lfoot = frames[:, _LFOOT]
    rfoot = frames[:, _RFOOT]

    # Heading-aligned axis-aligned bounding box volume.
    # heading = cross(LHip - RHip, vertical) = (-hip_z, 0, hip_x), already horizontal
    hip_line = frames[:, _LHIP] - frames[:, _RHIP]
    head_x = -hip_line[:, 2]
    head_z = hip_line[:, 0]
    norm = np.hypot(head_x, head_z)
    heading_degenerate = norm < _DEGENERATE_EPS
    safe_norm = np.where(heading_degenerate, 1.0, norm)
    ux = np.where(heading_degenerate, 0.0, head_x / safe_norm)
    uz = np.where(heading_degenerate, 1.0, head_z / safe_norm)
    # Rotation about vertical sending the heading to +Z:
    #   x' = uz*x - ux*z ; y' = y ; z' = ux*x + uz*z
    x = frames[:, :, 0]
    y = frames[:, :, 1]
    z = frames[:, :, 2]
    xr = uz[:, None] * x - ux[:, None] * z
    zr = ux[:, None] * x + uz[:, None] * z
    extent_x = xr.max(axis=1) - xr.min(axis=1)
    extent_y = y.max(axis=1) - y.min(axis=1)
    extent_z = zr.max(axis=1) - zr.min(axis=1)
    out[:, 0] = extent_x * extent_y * extent_z

    a1, d1 = _angles_between(lsho - neck, rsho - neck)
    a2, d2 = _angles_between(neck - rsho, lsho - rsho)
    a3, d3 = _angles_between(neck - lsho, rsho - lsho)
    a4, d4 = _angles_between(np.broadcast_to(VERTICAL, (tau, 3)), spine - neck)
    a5, d5 = _angles_between(head - neck, spine - neck)
    out[:, 1] = a1
    out[:, 2] = a2
    out[:, 3] = a3
    out[:, 4] = a4
    out[:, 5] = a5

    out[:, 6] = np.linalg.norm(rhand - root, axis=1)
    out[:, 7] = np.linalg.norm(lhand - root, axis=1)
    out[:, 8] = np.linalg.norm(rfoot - root, axis=1)
    out[:, 9] = np.linalg.norm(lfoot - root, axis=1)

    out[:, 10] = _triangle_area(rhand, lhand, neck)
    out[:, 11] = _triangle_area(rfoot, lfoot, root)

    degenerate = heading_degenerate | d1 | d2 | d3 | d4 | d5
    return out, degenerate


def posture_features(pose: np.ndarray) -> tuple[np.ndarray, bool]:
    """12 posture values for a single pose, plus a degeneracy flag.

    Coincident joints collapse the affected angle to 0 and set the flag.
    """
    values, degenerate = batch_posture_features(np.asarray(pose, dtype=float)[None])
    return values[0], bool(degenerate[0])

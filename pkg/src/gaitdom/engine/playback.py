"""Cyclic gait playback with navigation-driven root placement.

The source gait's own root motion is stripped every frame and replaced by
the navigation-supplied root; the pose is rotated about the vertical axis to
the navigation velocity direction. Source clips are assumed to face +Z, so a
heading of 0 keeps the original orientation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from ..errors import NavigationError
from ..mocap.skeleton import Gait

_STILL_EPS = 1e-9


@dataclass(frozen=True)
class CharacterState:
    """Playback cursor (fractional frames, wraps at tau) plus world placement."""

    character_id: str
    gait: Gait
    cursor: float
    root: np.ndarray      # (3,)
    heading: float = 0.0  # radians about vertical; 0 faces +Z


def sample_pose(gait: Gait, cursor: float) -> np.ndarray:
    """Pose at a fractional cursor, lerping cyclically between frames."""
    tau = gait.n_frames
    cursor = cursor % tau
    lo = int(math.floor(cursor))
    frac = cursor - lo
    if frac == 0.0:
        return gait.frames[lo]
    hi = (lo + 1) % tau
    return (1.0 - frac) * gait.frames[lo] + frac * gait.frames[hi]


def _heading_rotation(heading: float) -> np.ndarray:
    c, s = math.cos(heading), math.sin(heading)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def step_character(state: CharacterState, nav_callback, dt: float):
    """Advance one step of dt seconds.

    nav_callback(state, dt) must return the new root position. Returns
    (new_state, world_positions (16, 3)); the root joint lands exactly on the
    navigation output.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    try:
        new_root = np.asarray(nav_callback(state, dt), dtype=float)
    except Exception as exc:  # propagate with the character attached
        raise NavigationError(state.character_id, exc) from exc

    velocity = (new_root - state.root) / dt
    horizontal = math.hypot(velocity[0], velocity[2])
    heading = math.atan2(velocity[0], velocity[2]) if horizontal > _STILL_EPS else state.heading

    cursor = (state.cursor + dt * state.gait.fps) % state.gait.n_frames
    pose = sample_pose(state.gait, cursor)
    local = pose - pose[0]  # root-relative
    world = local @ _heading_rotation(heading).T + new_root

    new_state = replace(state, cursor=cursor, root=new_root, heading=heading)
    return new_state, world


def spawn_character(character_id: str, gait: Gait, root, heading: float = 0.0,
                    cursor: float = 0.0) -> CharacterState:
    return CharacterState(character_id=character_id, gait=gait, cursor=cursor,
                          root=np.asarray(root, dtype=float), heading=heading)
